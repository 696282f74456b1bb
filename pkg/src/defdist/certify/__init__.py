from defdist.certify.certificate import (
    DEFAULT_TOLERANCES,
    CertifyTolerances,
    DefectiveCertificate,
    certify,
)
from defdist.certify.pseudospectrum import (
    PseudospectrumGrid,
    grid_to_frame,
    sigma_min_grid,
    write_grid_csv,
)
from defdist.certify.saddle import SaddleReport, saddle_check, sigma_min_hessian
