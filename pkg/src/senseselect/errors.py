class FormatError(ValueError):
    """A data file does not match its expected line format."""

    def __init__(self, message, path=None, line_no=None):
        self.path = path
        self.line_no = line_no
        where = ""
        if path is not None:
            where = f"{path}:"
        if line_no is not None:
            where += f"{line_no}:"
        super().__init__(f"{where} {message}" if where else message)


class UnknownWordError(KeyError):
    def __str__(self):
        return f"unknown word: {self.args[0]!r}"


class UnknownSenseError(KeyError):
    def __str__(self):
        return f"sense {self.args[0]!r} is not in the sense space of {self.args[1]!r}"
