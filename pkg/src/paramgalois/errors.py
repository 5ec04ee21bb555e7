"""Exception types with the exit codes used by the command-line front end."""


class ParamGaloisError(Exception):
    code = 1
    tag = "error"


class ParseError(ParamGaloisError):
    code = 2
    tag = "parse-error"

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)


class UnsupportedError(ParamGaloisError):
    code = 3
    tag = "unsupported"


class UnsupportedDenominator(UnsupportedError):
    tag = "unsupported-denominator"

    def __init__(self, factor, message="unsupported denominator"):
        self.factor = factor
        super().__init__(f"{message}: {factor}")


class UnsupportedRadicand(UnsupportedError):
    tag = "unsupported-radicand"


class VerificationError(ParamGaloisError):
    code = 4
    tag = "verification-failure"


class InvalidCertificate(VerificationError):
    tag = "invalid-certificate"

    def __init__(self, message="invalid certificate"):
        super().__init__(message)
