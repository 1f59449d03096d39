"""Domain exceptions with stable machine codes, shared by the library, API and CLI."""


class WorkbenchError(Exception):
    """Base class for all domain errors.

    `code` is the stable machine-readable name surfaced over HTTP and in
    --json CLI output; `http_status` is the status the API maps it to.
    """

    code = "Error"
    http_status = 400

    def __init__(self, message=""):
        super().__init__(message or self.code)
        self.message = message or self.code


class MalformedRow(WorkbenchError):
    code = "MalformedRow"

    def __init__(self, line, message=""):
        self.line = line
        super().__init__(message or f"malformed row at line {line}")


class EmptyCui(WorkbenchError):
    code = "EmptyCui"


class EmptyName(WorkbenchError):
    code = "EmptyName"


class UnknownCui(WorkbenchError):
    code = "UnknownCui"
    http_status = 404


class UnknownAnnotation(WorkbenchError):
    code = "UnknownAnnotation"
    http_status = 404


class UnknownAnnotator(WorkbenchError):
    code = "UnknownAnnotator"
    http_status = 404


class UnknownProject(WorkbenchError):
    code = "UnknownProject"
    http_status = 404


class UnknownDocument(WorkbenchError):
    code = "UnknownDocument"
    http_status = 404


class UnknownTask(WorkbenchError):
    code = "UnknownTask"
    http_status = 404


class InvalidTask(WorkbenchError):
    code = "InvalidTask"


class InvalidPattern(WorkbenchError):
    code = "InvalidPattern"


class IllegalValue(WorkbenchError):
    code = "IllegalValue"


class IllegalTransition(WorkbenchError):
    code = "IllegalTransition"
    http_status = 409


class EmptyCorpus(WorkbenchError):
    code = "EmptyCorpus"


class LengthMismatch(WorkbenchError):
    code = "LengthMismatch"


class EmptyTable(WorkbenchError):
    code = "EmptyTable"


class DegenerateMarginals(WorkbenchError):
    code = "DegenerateMarginals"


class SingleClass(WorkbenchError):
    code = "SingleClass"


class TooFewItems(WorkbenchError):
    code = "TooFewItems"


class DuplicateDocId(WorkbenchError):
    code = "DuplicateDocId"


class CorruptFile(WorkbenchError):
    code = "CorruptFile"
    http_status = 500

    def __init__(self, offset, message=""):
        self.offset = offset
        super().__init__(message or f"corrupt store file at byte offset {offset}")


class VersionMismatch(WorkbenchError):
    code = "VersionMismatch"
    http_status = 500


class IntegrityError(WorkbenchError):
    code = "IntegrityError"
    http_status = 500
