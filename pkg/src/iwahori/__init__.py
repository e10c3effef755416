"""Iwahori double cosets of SL_n over Laurent series in characteristic p, affine
Deligne-Lusztig varieties X_x(e^nu) and the hexagons of their points for SL_3."""
from .arith import INF, Field, FieldElem, Series, get_field, parse_series, render_series
from .coset import classify_double_coset, retract
from .errors import IwahoriError
from .hexagon import Hexagon, hexagon_of
from .linalg import Mat, parse_mat, render_mat
from .weyl import AffineWeylElt, parse_weyl, render_weyl

__version__ = "0.1.0"
