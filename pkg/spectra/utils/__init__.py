from .model_list import ModelList
from .sampling import (
    random_hermitian,
    random_matrix,
    random_normal,
    random_unitary,
    random_vector,
)
