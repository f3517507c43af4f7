"""Exception hierarchy shared across the engine."""


class GrafionError(Exception):
    """Base class for every error raised by this package."""


class GraphError(GrafionError):
    """Errors raised by the graph store and its operations."""


class UnknownNode(GraphError):
    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"unknown node id: {node_id}")


class UnknownEdge(GraphError):
    def __init__(self, detail):
        super().__init__(f"unknown edge: {detail}")


class NodeHasEdges(GraphError):
    def __init__(self, node_id, degree):
        self.node_id = node_id
        self.degree = degree
        super().__init__(
            f"node {node_id} still has {degree} incident edge(s); delete with detach=True"
        )


class GraphTooSmall(GraphError):
    def __init__(self, needed, actual):
        super().__init__(f"operation needs at least {needed} nodes, graph has {actual}")


class IndexExists(GraphError):
    def __init__(self, label, key):
        super().__init__(f"index on (:{label}).{key} already exists")


class BadValue(GraphError):
    """Rejected property value (wrong type, or a NaN float)."""


class KindMismatch(GraphError):
    def __init__(self, kind1, kind2):
        super().__init__(f"graph kinds differ: {kind1} vs {kind2}")


class SampleTooLarge(GraphError):
    def __init__(self, k, n):
        super().__init__(f"cannot sample {k} nodes from a graph with {n}")


class AlgorithmError(GrafionError):
    """Errors raised by the algorithms module."""


class NegativeWeight(AlgorithmError):
    def __init__(self, edge_id, weight):
        super().__init__(f"edge {edge_id} has negative weight {weight}")


class NoPath(AlgorithmError):
    def __init__(self, source, target):
        super().__init__(f"no path from {source} to {target}")


class DirectedInput(AlgorithmError):
    def __init__(self, what):
        super().__init__(f"{what} requires an undirected graph")


class EmptyGraph(AlgorithmError):
    def __init__(self, what):
        super().__init__(f"{what} requires a non-empty graph")


class IncompletePartition(AlgorithmError):
    def __init__(self, missing):
        super().__init__(f"partition does not cover node(s): {sorted(missing)[:5]}")


class BadDamping(AlgorithmError):
    def __init__(self, d):
        super().__init__(f"damping factor must satisfy 0 < d < 1, got {d}")


class NoConvergence(AlgorithmError):
    def __init__(self, what, iterations):
        super().__init__(f"{what} did not converge within {iterations} iterations")


class IoError(GrafionError):
    """File-level failures during import or export."""


class FileNotFound(IoError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"file not found: {path}")


class RaggedRow(IoError):
    def __init__(self, line, fields, headers):
        super().__init__(f"line {line}: row has {fields} fields but header has {headers}")


class BadEncoding(IoError):
    def __init__(self, path, detail):
        super().__init__(f"{path}: not valid UTF-8 ({detail})")


class FormatError(IoError):
    def __init__(self, detail, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{detail}")


class QueryError(GrafionError):
    """Errors raised by the query front end and executor."""

    offset: int | None = None


class LexError(QueryError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (offset {offset})")


class ParseError(QueryError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (offset {offset})")


class UnboundVariable(QueryError):
    def __init__(self, name, offset=None):
        self.offset = offset
        super().__init__(f"variable `{name}` is not bound by any preceding clause")


class ExecError(QueryError):
    """Runtime failure while executing a validated statement."""


class TypeMismatch(ExecError):
    pass


class UnknownProcedure(ExecError):
    def __init__(self, name):
        super().__init__(f"unknown procedure: {name}")


class BadArguments(ExecError):
    pass


class MissingParameter(ExecError):
    def __init__(self, name):
        super().__init__(f"query parameter ${name} was not supplied")


class ServerError(GrafionError):
    """Wire-protocol failures."""


class AuthFailed(ServerError):
    pass


class ProtocolError(ServerError):
    pass
