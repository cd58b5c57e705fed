class MiniLangError(Exception):
    """Base class for static errors in MiniLang source."""

    def __init__(self, message, line=0, col=0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class ParseError(MiniLangError):
    pass


class TypeCheckError(MiniLangError):
    pass
