class DibblException(Exception):
    def __init__(self, msg):
        super(DibblException, self).__init__(msg)
        self.message = msg


class ParseError(DibblException):
    """
    Raised when an expression string can't be turned into a tree
    :param position: Character offset of the offending token
    """

    def __init__(self, msg, position: int = 0):
        super(ParseError, self).__init__(msg)
        self.position = position

    def __str__(self):
        return '{} (at position {})'.format(self.message, self.position)


class UnknownVariableError(DibblException):
    pass


class InvalidArgumentError(DibblException, ValueError):
    pass


class CorpusError(DibblException):
    pass


class MathDomainError(DibblException):
    pass


class ArithmeticRangeError(MathDomainError, ArithmeticError):
    pass


class ZeroDivisionRealPartError(MathDomainError, ZeroDivisionError):
    pass


class DomainError(MathDomainError, ValueError):
    pass


class CoincidentPointsError(MathDomainError):
    pass


class NotAQuadraticError(MathDomainError):
    pass
