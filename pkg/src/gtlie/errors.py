"""Error taxonomy shared across the package."""


class GTError(Exception):
    """Base class for all package errors."""


class ContextMismatch(GTError):
    """Operands carry different alphabets or truncation bounds."""


class IncompleteTable(GTError):
    """A Fox table has no entry for a generator (pair) it was asked for."""


class WrongSide(GTError):
    """A one-sided Fox derivative was used on the wrong side."""


class NonAugmentedInput(GTError):
    """Operation requires counit zero (e.g. exp of a non-augmented element)."""


class InhomogeneousInput(GTError):
    """A homogeneous element was required."""


class NotSurjective(GTError):
    """A map expected to be degreewise surjective is not."""


class NotGroupLike(GTError):
    """Element is not group-like (coproduct x (x) x, counit one)."""


class IncompatiblePair(GTError):
    """Quasi-derivation and pairing do not satisfy the membership law."""


class NonGeneratorWord(GTError):
    """A token does not name a generator of the alphabet."""


class IndexOutOfRange(GTError):
    """A strand or generator index is outside the allowed range."""
