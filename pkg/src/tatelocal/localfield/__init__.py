"""Places, characters, exact p-adic step functions and test functions."""

from .bruhat import Ball, BruhatFunction, LaurentPolynomial, bruhat_canonicalize, bruhat_eval, shell_mellin
from .characters import UnitaryCharacter, char_eval, characters_mod, conductor_exponent, primitive_root
from .cyclotomic import Cyclotomic
from .logexact import LogExact
from .place import Place, haar_constants, norm
from .testfunction import MultiplicativeTestFunction, TestFunctionSum

__all__ = [
    "Ball", "BruhatFunction", "Cyclotomic", "LaurentPolynomial", "LogExact", "MultiplicativeTestFunction",
    "Place", "TestFunctionSum", "UnitaryCharacter", "bruhat_canonicalize", "bruhat_eval", "char_eval",
    "characters_mod", "conductor_exponent", "haar_constants", "norm", "primitive_root", "shell_mellin",
]
