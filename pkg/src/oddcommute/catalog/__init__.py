from .classical import (projective_special_linear, projective_special_unitary,
                        special_linear_on_vectors, symplectic)
from .fields import GF, field
from .groups import (EXTRAS, SUITE, GroupFile, GroupFileError, GroupSpec, alternating, data_path,
                     frobenius, load_group, parse_group_text, read_group_file, suite_group,
                     symmetric)
