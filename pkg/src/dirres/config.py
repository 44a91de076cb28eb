"""Central tolerance pack used by the library, the tests and the CLI."""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    #: algebraic identities (Penrose residuals, dual formulas, downdates)
    algebraic: float = 1e-8
    #: Monte Carlo agreement, in standard errors
    stochastic_se: float = 3.0
    #: relative gap under which two objective values count as tied
    tie: float = 1e-10
    #: LU pivot threshold, relative to the largest matrix entry
    pivot: float = 1e-12
    #: 1-norm condition estimate above which a warning is emitted
    condition_warning: float = 1e12
    #: smallest admissible denominator in the marginal gain / downdate
    breakdown: float = 1e-14
    #: row/column sum slack accepted for a Laplacian
    zero_sum: float = 1e-9

    def with_overrides(self, **kwargs):
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT = Tolerances()

#: default cap on the number of k-subsets brute force may evaluate
BRUTE_FORCE_CAP = 2_000_000

#: default cap on total simulated steps per Monte Carlo estimate
WALK_STEP_CAP = 10**9
