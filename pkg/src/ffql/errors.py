"""Exception hierarchy for ffql.

Every failure mode raised by the library is a subclass of FFQLError so
callers (and the CLI) can distinguish library errors from bugs.
"""


class FFQLError(Exception):
    """Base class for all ffql errors."""


# -- field / polynomial layer ------------------------------------------------

class NonPrime(FFQLError):
    pass


class SizeExceeded(FFQLError):
    pass


class ZeroPolynomial(FFQLError):
    pass


class EvenCharacteristic(FFQLError):
    pass


class OddCharacteristic(FFQLError):
    pass


# -- divisors ----------------------------------------------------------------

class NotEffective(FFQLError):
    pass


class CapExceeded(FFQLError):
    pass


class OverlappingSupport(FFQLError):
    pass


# -- quadratic extensions ----------------------------------------------------

class IsSquareClass(FFQLError):
    pass


class ConstantFieldExtension(FFQLError):
    pass


class NotAGenerator(FFQLError):
    pass


class EvenDegreePlace(FFQLError):
    pass


class NoSuchDiscriminant(FFQLError):
    pass


class InvalidDiscriminantShape(FFQLError):
    pass


# -- characters / rings ------------------------------------------------------

class NotIntegralAtModulus(FFQLError):
    pass


class InfinityInModulus(FFQLError):
    pass


class RingMismatch(FFQLError):
    pass


class NotPrimitive(FFQLError):
    pass


class PrincipalCharacter(FFQLError):
    pass


class NotASubgroup(FFQLError):
    pass


class PlaceInSupport(FFQLError):
    pass


# -- L-functions / moments ---------------------------------------------------

class PoleAt(FFQLError):
    pass


class EvaluationOnCriticalCircle(FFQLError):
    pass


class OutsideValidityRegion(FFQLError):
    pass


class OddCharacteristicField(FFQLError):
    pass


class BadConfig(FFQLError):
    pass
