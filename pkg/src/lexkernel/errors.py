"""Exception hierarchy shared by every module."""


class LexKernelError(Exception):
    """Base class for all library errors."""


# graph
class UndefinedDensityError(LexKernelError):
    pass


class InvalidPartitionError(LexKernelError):
    pass


class UngroundedCycleError(LexKernelError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " -> ".join(map(str, self.cycle + self.cycle[:1]))
        super().__init__(f"cycle outside the base set: {path}")


class UnknownVertexError(LexKernelError):
    def __init__(self, vertices):
        self.vertices = sorted(vertices)
        super().__init__(f"unknown vertices: {', '.join(map(str, self.vertices))}")


# dictionary
class DictionaryError(LexKernelError):
    pass


class EmptyDefinitionError(DictionaryError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"empty definition for {word!r}")


class SelfDefinitionError(DictionaryError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"{word!r} is used in its own definition")


class DuplicateEntryError(DictionaryError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"more than one entry for {word!r}")


class NotClosedError(DictionaryError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        shown = ", ".join(self.missing[:20])
        more = f" (+{len(self.missing) - 20} more)" if len(self.missing) > 20 else ""
        super().__init__(f"definientes without entries: {shown}{more}")


# ingest / io
class ParseError(LexKernelError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class DuplicateRecordError(ParseError):
    pass


class EmptyResultError(LexKernelError):
    pass


# kernel
class EmptyKernelError(LexKernelError):
    pass


# grounding
class BudgetExceededError(LexKernelError):
    def __init__(self, nodes, best_size, best_set):
        self.nodes = nodes
        self.best_size = best_size
        self.best_set = best_set
        super().__init__(
            f"node budget exhausted after {nodes} nodes; best known upper bound {best_size}"
        )


# statistics
class StatsError(LexKernelError):
    pass


class CollinearityError(StatsError):
    def __init__(self, columns):
        self.columns = list(columns)
        super().__init__(f"singular design matrix; dependent columns: {', '.join(self.columns)}")


class InsufficientDataError(StatsError):
    pass


class InsufficientGroupError(StatsError):
    pass


class NoOverlapError(StatsError):
    pass
