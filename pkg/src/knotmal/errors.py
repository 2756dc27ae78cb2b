"""Exception hierarchy shared by every module."""


class KnotmalError(Exception):
    """Base class; the CLI maps any of these to exit status 1."""


class ParseError(KnotmalError):
    pass


class MalformedDT(ParseError):
    pass


class MalformedBraid(ParseError):
    pass


class TrivialKnotRejected(KnotmalError):
    pass


class NotAKnot(KnotmalError):
    pass


class GcdViolation(KnotmalError):
    pass


class UnknownTableName(KnotmalError):
    pass


class NonRealizable(KnotmalError):
    pass


class UnknownGenerator(KnotmalError):
    pass


class UnsupportedFactor(KnotmalError):
    pass


class NotDeficiencyOne(KnotmalError):
    pass


class H1NotZ(KnotmalError):
    pass


class NotApplicable(KnotmalError):
    pass


class ExcludedManifold(KnotmalError):
    pass


class CrossCheckFailed(KnotmalError):
    pass


class CheckFailed(KnotmalError):
    def __init__(self, name: str, detail: str = ""):
        self.name = name
        super().__init__(f"check {name!r} failed" + (f": {detail}" if detail else ""))
