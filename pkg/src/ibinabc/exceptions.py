class InvalidInputError(ValueError):
    """Argument outside an operation's domain."""


class DomainError(ValueError):
    """Well-formed input for which the quantity is undefined."""


class ConfigurationError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, token: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if token is not None:
            where.append(f"token {token}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.line = line
        self.token = token
