"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class SumlensError(Exception):
    code = "SumlensError"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class DocumentParseError(SumlensError):
    code = "DocumentParseError"

    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset

    def to_dict(self):
        d = super().to_dict()
        d["offset"] = self.offset
        return d


class EmptyDocument(SumlensError):
    code = "EmptyDocument"


class EmptyFeatureSet(SumlensError):
    code = "EmptyFeatureSet"


class NoClassifiableSentences(SumlensError):
    code = "NoClassifiableSentences"


class ParameterError(SumlensError, ValueError):
    code = "ParameterError"


class UndefinedScore(SumlensError, ValueError):
    """A ROUGE score whose denominator would be zero."""

    code = "UndefinedScore"
