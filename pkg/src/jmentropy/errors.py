"""Semantic exception hierarchy.

Every error raised by this package derives from :class:`JmentropyError`, so
callers can catch the whole family.  Validation errors double as
``ValueError`` for interoperability.
"""


class JmentropyError(Exception):
    """Base class for all errors raised by jmentropy."""


class DomainError(JmentropyError, ValueError):
    """An argument lies outside its mathematical domain beyond tolerance."""


class InvalidDistributionError(DomainError):
    """Probabilities are negative, above one, or do not sum to one."""


class NormalizationError(DomainError):
    """A vector fails its unit-norm or Bloch-ball constraint."""


class DegeneratePlaneError(JmentropyError):
    """The two axes are (anti)parallel, so they span no plane."""


class DegenerateSchemeError(JmentropyError):
    """The measurement probability is 0 or 1, leaving one axis undefined."""


class SharpnessViolationError(JmentropyError):
    """A sharpness pair is off the optimal trade-off frontier."""


class OverlapSingularityError(JmentropyError):
    """Eigenvector-overlap formula evaluated at its alpha^2+beta^2 -> 2 pole."""


class OutOfValidityRangeError(JmentropyError):
    """A closed-form bound was requested outside its angular validity range."""


class BracketError(JmentropyError):
    """Root finding failed: no sign change over the search interval."""


class EstimatorUndefinedError(JmentropyError):
    """A sampling estimator's denominator vanishes for this state."""
