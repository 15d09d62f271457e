"""Exception hierarchy shared across the package."""


class LcaHeartError(Exception):
    """Base class for all errors raised by this package."""


class MixedSymbolTableError(LcaHeartError):
    """Two exact values over different symbol tables were combined."""


class MissingShadowError(LcaHeartError):
    """A numeric evaluation needed a shadow value that was never declared."""


class FragmentTypingError(LcaHeartError):
    """A matrix entry violates the typed Hom-block table of the fragment."""


class OutOfFragmentError(LcaHeartError):
    """The requested construction exists abstractly but cannot be presented
    inside the typed fragment (typically a quotient projection or dual whose
    matrix would need an irrational coefficient on a connected coordinate)."""


class NotMonicError(LcaHeartError):
    """A two-term complex constructor received a non-injective differential.

    Carries the offending kernel as a witness.
    """

    def __init__(self, message, kernel=None, embedding=None):
        super().__init__(message)
        self.kernel = kernel
        self.embedding = embedding


class NotGhostError(LcaHeartError):
    """Operation requires a dense-image (torsion class) object."""


class UpperNotDiscreteError(LcaHeartError):
    """theta_inverse needs the degree-1 level to be discrete."""


class NotPrecompactError(LcaHeartError):
    """Operation requires a precompact group (compact completion)."""


class InvalidCertificateError(LcaHeartError):
    """A rewriting certificate failed re-validation."""


class RefinementNotGhostError(LcaHeartError):
    """The common refinement of two roof denominators lost monicity."""


class ParseError(LcaHeartError):
    """Surface-syntax error; carries position and the expected token set."""

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at position {position}"
                         + (f" (expected {', '.join(expected)})" if expected else ""))
        self.position = position
        self.expected = tuple(expected)


class UnboundNameError(LcaHeartError):
    """A command referenced a session name that is not bound."""


class SessionFormatError(LcaHeartError):
    """Session file has a wrong schema version or fails re-validation."""
