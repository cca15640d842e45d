"""p-ranks of cyclic covers via Jacobi sums and divisor character sums."""
from .curves import ClosedPoint, CurveSpec, SuperellipticBase
from .cyclo import CycloInt
from .ff import FieldSpec, FqElem, make_field

__all__ = ["ClosedPoint", "CurveSpec", "CycloInt", "FieldSpec", "FqElem",
           "SuperellipticBase", "make_field"]
__version__ = "0.1.0"
