"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`CarlitzGossError`; the CLI maps these to exit code 3 and reports
``code`` as a machine-readable identifier.
"""


class CarlitzGossError(Exception):
    code = "error"


class NonPrimeCharacteristic(CarlitzGossError, ValueError):
    code = "non_prime_characteristic"


class ReducibleModulus(CarlitzGossError, ValueError):
    code = "reducible_modulus"


class FieldMismatch(CarlitzGossError, ValueError):
    code = "field_mismatch"


class DivisionByZeroPoly(CarlitzGossError, ZeroDivisionError):
    code = "division_by_zero_poly"


class ZeroPolynomial(CarlitzGossError, ValueError):
    code = "zero_polynomial"


class PrecisionExhausted(CarlitzGossError, ArithmeticError):
    code = "precision_exhausted"


class InvertZero(CarlitzGossError, ZeroDivisionError):
    code = "invert_zero"


class PrimeMismatch(CarlitzGossError, ValueError):
    code = "prime_mismatch"


class NotBaseField(CarlitzGossError, ValueError):
    code = "not_base_field"


class ZDegreeOverflow(CarlitzGossError, ValueError):
    code = "z_degree_overflow"


class OutsideDomain(CarlitzGossError, ValueError):
    code = "outside_domain"


class ZeroIdeal(CarlitzGossError, ValueError):
    code = "zero_ideal"


class NotIrreducible(CarlitzGossError, ValueError):
    code = "not_irreducible"


class DegreeBoundViolated(CarlitzGossError, AssertionError):
    code = "degree_bound_violated"


class NonCyclicUnexpected(CarlitzGossError, AssertionError):
    code = "non_cyclic_unexpected"


class NotInUnitImage(CarlitzGossError, ValueError):
    code = "not_in_unit_image"


class ResidualTooLarge(CarlitzGossError, ArithmeticError):
    code = "residual_too_large"


class NotReal(CarlitzGossError, ValueError):
    code = "not_real"


class SingularToPrec(CarlitzGossError, ArithmeticError):
    code = "singular_to_precision"


class WrongCharacteristic(CarlitzGossError, ValueError):
    code = "wrong_characteristic"


class UnsupportedRing(CarlitzGossError, ValueError):
    code = "unsupported_ring"


class ParseError(CarlitzGossError, ValueError):
    code = "parse_error"
