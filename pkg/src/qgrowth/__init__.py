"""Growth invariants and random-walk return probabilities of discrete quantum groups.

Submodules:

``series``       exact polynomials, rational functions, truncated power series,
                 the S/B/P/Q invariants and closed forms
``fusion``       generic fusion-ring engine (balls, volumes, multiplicities)
``qgroups``      concrete rings and the product / free product / free version
``lie``          root systems, Weyl dimensions, lattice walks
``asymptotics``  exponent and ratio fits, algebraic ratio oracles
``cli``          command-line front end
"""

from .asymptotics import classify_growth, fit_exponential_ratio, fit_polynomial_exponent, root_qn, root_rn
from .fusion import FusionRing, multiplicities, return_probability, series_from_ring, volumes
from .lie import build_root_system, lie_return_probability, lie_volumes, weyl_dim
from .qgroups import ao_ring, as_ring, direct_product, free_product, free_version_growth, group_ring, parse_ring
from .series import PowerSeries, Polynomial, RationalFunction, closed_form, expand, growth_ratio

__version__ = "0.1.0"
