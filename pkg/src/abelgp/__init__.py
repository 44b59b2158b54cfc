"""Abel equations with hypergeometric linearisations, the (R, z) modulation
equation and the leading term of a dispersive bore, all checked by residuals."""

__version__ = "0.1.0"

from .errors import (AbelGPError, ComplexParamsError, DomainError, GridError, IntegratorError,
                     InversionError, ParameterError, PoleError, SingularCoeffs, SingularJet,
                     SingularParams)
from .dual import Dual
from .specfun import (HgParams, complete_elliptic_K, digamma, gamma_fn, gauss_2f1,
                      gauss_2f1_derivative, hyp2f1, jacobi_dn, jacobi_sncndn, rgamma)

__all__ = [
    "__version__", "Dual", "HgParams", "hyp2f1", "gauss_2f1", "gauss_2f1_derivative",
    "gamma_fn", "rgamma", "digamma", "complete_elliptic_K", "jacobi_sncndn", "jacobi_dn",
    "AbelGPError", "DomainError", "ParameterError", "PoleError", "SingularJet", "SingularCoeffs",
    "SingularParams", "ComplexParamsError", "GridError", "IntegratorError", "InversionError",
]
