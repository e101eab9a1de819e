from .geometry import Mesh1D, build_mesh, check_commensurate, classify, interaction_regions
from .kernels import Kernel, kernel_constants_2d, kernel_eval, make_kernel, single_material_kernel
from .banded import BandedSymmetricMatrix
from .assembly import ConstrainedSystem, apply_constraints, assemble_load, assemble_stiffness, dump_coordinates
from .solver import BandedCholeskyFactor, factor, solve
