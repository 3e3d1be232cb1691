"""Exception types shared across the package."""


class DcatError(Exception):
    pass


class ParseError(DcatError, ValueError):
    def __init__(self, msg, pos, text=""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


class TypeMismatch(DcatError, TypeError):
    pass


class TheoryViolation(DcatError):
    pass


class DimensionMismatch(DcatError, ValueError):
    pass


class NotConstant(DcatError, ValueError):
    pass
