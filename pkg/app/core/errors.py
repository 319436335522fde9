class PositivityError(Exception):
    """Base exception for the certification engine"""
    pass

class ParseError(PositivityError, ValueError):
    """Raised when polynomial text cannot be read"""
    pass

class NotHomogeneousError(ParseError):
    """Raised when the terms of a polynomial have different total degrees"""
    pass

class VariableIndexError(ParseError):
    """Raised when a variable outside x1..xn appears"""
    pass

class DimensionMismatchError(PositivityError, ValueError):
    """Raised when points, matrices or polynomials live in different spaces"""
    pass

class DegreeError(PositivityError, ValueError):
    """Raised when a degree lies outside the domain of an operation"""
    pass

class OddDegreeError(DegreeError):
    """Raised when an even degree is required"""
    pass

class ZeroPolynomialError(PositivityError, ValueError):
    """Raised when a nonzero polynomial is required"""
    pass

class NonMonicError(PositivityError, ValueError):
    """Raised when a monic univariate polynomial is required"""
    pass

class RootAtZeroError(PositivityError, ValueError):
    """Raised when t = 0 must first be divided out of a univariate polynomial"""
    pass

class CapacityError(PositivityError):
    """Raised when an exact resultant would exceed the configured limits"""
    pass

class DegenerateSpecializationError(PositivityError):
    """Raised when the Macaulay denominator minor vanishes at the given coefficients"""
    pass

class InvariantViolation(PositivityError):
    """Raised when an internal consistency check fails"""
    pass
