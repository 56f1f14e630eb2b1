"""Cocalibrated G2-structures on seven-dimensional direct sums of Lie algebras."""
from .catalog import make, parse_name, split_pair
from .certificate import Certificate, verify_certificate
from .classify import Verdict, decide, decide_5d_r2
from .construct import ConstructionError, construct, construct_5d_r2
from .forms import KForm, e, wedge
from .lie import LieAlgebra, cohomology

__all__ = ["Certificate", "ConstructionError", "KForm", "LieAlgebra", "Verdict", "cohomology", "construct",
           "construct_5d_r2", "decide", "decide_5d_r2", "e", "make", "parse_name", "split_pair",
           "verify_certificate", "wedge"]
