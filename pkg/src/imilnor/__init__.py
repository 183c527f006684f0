"""Image Milnor numbers of corank-1 map germs with exact arithmetic."""

from .germspec import GermSpec, format_germ_spec, parse_germ_spec, parse_germ_specs
from .image import (
    algebraic_sigma_count,
    image_milnor_number,
    stable_slice,
    transverse_slice,
    verify_le_greuel,
)
from .milnor import IcisPresentation, milnor_number_hypersurface, milnor_number_icis
from .multipoints import MapGerm, Partition, divided_differences, ideal_IkP, ideal_Ik, partitions
from .parse import parse_polynomial
from .poly import Polynomial
from .stabilisation import StabilisationFamily, double_point_curve, typed_counts
from .stdbasis import IdealPresentation, local_quotient_dim, standard_basis

__version__ = "0.1.0"
