"""nclab: a finite-dimensional laboratory for noncommutative Lp norms,
Tomita-Takesaki modular data, KMS states, Dyson expansionals and the
exponentiable perturbation classes, on block matrix algebras with weighted
traces."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402,F401
    BlockAlgebra,
    BlockOperator,
    DensityState,
    hs_inner,
    hs_norm,
    simple,
    trace,
)
from .modular import build_standard_form, modular_flow  # noqa: E402,F401
from .nclp import lp_norm  # noqa: E402,F401
from .kms import gibbs  # noqa: E402,F401
