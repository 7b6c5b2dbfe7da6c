"""Exception hierarchy shared by all koszulkit modules."""


class KoszulkitError(Exception):
    """Base class for every error raised by koszulkit."""


# -- exact linear algebra -------------------------------------------------

class CompositionNotZero(KoszulkitError):
    """Two consecutive maps handed to a cochain computation do not compose to zero."""


# -- posets ---------------------------------------------------------------

class PosetError(KoszulkitError):
    """Invalid poset input (the CLI maps these to exit code 2)."""


class ParseError(PosetError):
    pass


class NotRanked(PosetError):
    pass


class NoUniqueMinimum(PosetError):
    pass


class DanglingElement(PosetError):
    pass


class RankOutOfRange(PosetError):
    pass


class BadInterval(PosetError):
    pass


class RankNotOne(PosetError):
    pass


class BadParams(PosetError):
    pass


# -- order complexes ------------------------------------------------------

class NotSubcomplex(KoszulkitError):
    pass


# -- algebra / verdicts ---------------------------------------------------

class NotUniform(KoszulkitError):
    """An operation whose theory assumes a uniform poset got a non-uniform one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisNotMet(KoszulkitError):
    pass


class InternalInconsistency(KoszulkitError):
    """Two independent oracles disagreed; this falsifies a theorem or exposes a bug."""


class ResourceGuard(KoszulkitError):
    """A configured size guard refused a computation (CLI exit code 3)."""


class DegreeTooLarge(ResourceGuard):
    pass


class BoundsExceeded(ResourceGuard):
    pass
