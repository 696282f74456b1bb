from defdist.linalg.matrix import (
    ComplexMatrix,
    ComplexVector,
    as_complex_matrix,
    as_complex_vector,
    frobenius_norm,
    shifted,
)
from defdist.linalg.factorization import Counters, Factorization, factorize, solve
from defdist.linalg.spectral import (
    SingularTriplet,
    eigenvalues_diagnostic,
    nearest_eigenvalues,
    smallest_singular_triplet,
    smallest_singular_value,
)
