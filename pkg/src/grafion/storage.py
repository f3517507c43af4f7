"""CSV import/export, JSON graph interchange, and layout files.

The whole-graph CSV format puts node rows before edge rows under the
header `_id,_labels,<sorted property keys...>,_start,_end,_type`.
Node rows leave the last three columns empty; `_labels` joins sorted
labels with `:`. With use_types enabled, non-text property values carry
a `:int` / `:float` / `:bool` suffix so a later import restores tags
exactly. Structural columns are never suffixed.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from typing import Any, Iterator

from .errors import BadEncoding, FileNotFound, FormatError, IoError, RaggedRow
from .graph import EdgeRecord, NodeRecord, PropertyGraph, iter_edges, iter_nodes
from .layouts import LayoutMap
from .values import check_value

STRUCTURAL = ("_id", "_labels", "_start", "_end", "_type")


def load_csv(path: str, delimiter: str = ",") -> Iterator[dict[str, str | None]]:
    """Header-keyed rows from a CSV file.

    Missing trailing fields come back as None; quoted fields may contain
    the delimiter, doubled quotes, and newlines. Rows wider than the
    header raise RaggedRow with the offending line number.
    """
    if not os.path.isfile(path):
        raise FileNotFound(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            text = handle.read()
    except UnicodeDecodeError as exc:
        raise BadEncoding(path, str(exc)) from None
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        return iter(())

    def rows() -> Iterator[dict[str, str | None]]:
        for record in reader:
            if not record:
                continue
            if len(record) > len(header):
                raise RaggedRow(reader.line_num, len(record), len(header))
            padded = record + [None] * (len(header) - len(record))
            yield dict(zip(header, padded))

    return rows()


def _encode_value(value: Any, use_types: bool) -> str:
    if isinstance(value, bool):
        text = "true" if value else "false"
        return f"{text}:bool" if use_types else text
    if isinstance(value, int):
        return f"{value}:int" if use_types else str(value)
    if isinstance(value, float):
        return f"{value!r}:float" if use_types else repr(value)
    return str(value)


def _decode_value(field: str, use_types: bool) -> Any:
    # text is unsuffixed, so a text value that happens to end in a type
    # suffix with a parseable prefix cannot be told apart; unparseable
    # prefixes fall back to text
    if not use_types:
        return field
    try:
        if field.endswith(":int"):
            return int(field[:-4])
        if field.endswith(":float"):
            return float(field[:-6])
        if field.endswith(":bool") and field[:-5] in ("true", "false"):
            return field[:-5] == "true"
    except ValueError:
        pass
    return field


def export_csv_all(
    g: PropertyGraph,
    path: str,
    delimiter: str = ",",
    use_types: bool = False,
) -> dict[str, int]:
    """Write the entire graph to one CSV file; returns {nodes, edges} counts."""
    keys = sorted(
        {k for n in g.nodes.values() for k in n.properties}
        | {k for e in g.edges.values() for k in e.properties}
    )
    header = ["_id", "_labels", *keys, "_start", "_end", "_type"]
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, delimiter=delimiter)
            writer.writerow(header)
            for node in iter_nodes(g):
                row = [str(node.id), ":".join(sorted(node.labels))]
                row += [
                    _encode_value(node.properties[k], use_types) if k in node.properties else ""
                    for k in keys
                ]
                row += ["", "", ""]
                writer.writerow(row)
            for edge in iter_edges(g):
                row = [str(edge.id), ""]
                row += [
                    _encode_value(edge.properties[k], use_types) if k in edge.properties else ""
                    for k in keys
                ]
                row += [str(edge.source), str(edge.target), edge.type]
                writer.writerow(row)
    except csv.Error as exc:
        raise IoError(f"value not representable in CSV: {exc}") from None
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None
    return {"nodes": g.node_count(), "edges": g.edge_count()}


def _apply_import_record(
    g: PropertyGraph, record: list, pos: dict, keys: list, use_types: bool, line: int
) -> None:
    try:
        ident = int(record[pos["_id"]])
    except ValueError:
        raise FormatError(f"bad _id {record[pos['_id']]!r}", line=line) from None
    props = {}
    for key in keys:
        field = record[pos[key]]
        if field != "":
            try:
                props[key] = check_value(_decode_value(field, use_types))
            except Exception as exc:
                raise FormatError(f"bad value for {key}: {exc}", line=line) from None
    if record[pos["_type"]] == "":
        labels = [l for l in record[pos["_labels"]].split(":") if l]
        if ident in g.nodes:
            raise FormatError(f"duplicate node id {ident}", line=line)
        g.nodes[ident] = NodeRecord(ident, set(labels), props)
        g._out[ident] = []
        g._in[ident] = []
        g._next_node_id = max(g._next_node_id, ident + 1)
    else:
        try:
            source = int(record[pos["_start"]])
            target = int(record[pos["_end"]])
        except ValueError:
            raise FormatError("bad _start/_end", line=line) from None
        if source not in g.nodes or target not in g.nodes:
            raise FormatError("edge references unknown node", line=line)
        if ident in g.edges:
            raise FormatError(f"duplicate edge id {ident}", line=line)
        edge = EdgeRecord(ident, source, target, record[pos["_type"]], props)
        g.edges[ident] = edge
        g._edge_key[g._key(source, target, edge.type)] = ident
        g._out[source].append(ident)
        g._in[target].append(ident)
        g._next_edge_id = max(g._next_edge_id, ident + 1)


def import_csv_all(
    path: str,
    delimiter: str = ",",
    use_types: bool = False,
    kind: str = "undirected",
    batch_size: int | None = None,
) -> PropertyGraph:
    """Exact inverse of export_csv_all, ids included.

    The file format does not record the graph kind, so it is supplied
    here (the CLI threads its --kind flag through). With batch_size set,
    records are buffered and applied in chunks of that size; the result
    is identical either way (ingestion is batched, never parallel).
    """
    if not os.path.isfile(path):
        raise FileNotFound(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty file", line=1) from None
        for column in STRUCTURAL:
            if column not in header:
                raise FormatError(f"missing column {column}", line=1)
        keys = [c for c in header if c not in STRUCTURAL]
        pos = {c: header.index(c) for c in header}

        g = PropertyGraph(kind)
        batch: list[tuple[list, int]] = []
        for record in reader:
            line = reader.line_num
            if not record:
                continue
            if len(record) != len(header):
                raise FormatError(
                    f"row has {len(record)} fields, header has {len(header)}", line=line
                )
            batch.append((record, line))
            if batch_size and len(batch) >= batch_size:
                for item, item_line in batch:
                    _apply_import_record(g, item, pos, keys, use_types, item_line)
                batch = []
        for item, item_line in batch:
            _apply_import_record(g, item, pos, keys, use_types, item_line)
    return g


# -- JSON interchange ---------------------------------------------------------

_NODE_FIELDS = {"id", "labels", "properties"}
_EDGE_FIELDS = {"id", "source", "target", "type", "properties"}


def to_json(g: PropertyGraph, indent: int | None = None) -> str:
    payload = {
        "kind": g.kind,
        "nodes": [
            {"id": n.id, "labels": sorted(n.labels), "properties": n.properties}
            for n in iter_nodes(g)
        ],
        "edges": [
            {
                "id": e.id,
                "source": e.source,
                "target": e.target,
                "type": e.type,
                "properties": e.properties,
            }
            for e in iter_edges(g)
        ],
    }
    return json.dumps(payload, indent=indent, allow_nan=False, sort_keys=True)


def from_json(text: str) -> PropertyGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise FormatError("top level must be an object")
    unknown = set(payload) - {"kind", "nodes", "edges"}
    if unknown:
        raise FormatError(f"unknown field(s): {sorted(unknown)}")
    kind = payload.get("kind")
    if kind not in ("directed", "undirected"):
        raise FormatError(f"bad kind: {kind!r}")
    g = PropertyGraph(kind)
    for entry in payload.get("nodes", []):
        if not isinstance(entry, dict) or set(entry) - _NODE_FIELDS:
            raise FormatError(f"bad node entry: {entry!r}")
        try:
            ident = int(entry["id"])
            labels = set(entry.get("labels", []))
            props = {k: check_value(v) for k, v in dict(entry.get("properties", {})).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad node entry: {exc}") from None
        if ident in g.nodes:
            raise FormatError(f"duplicate node id {ident}")
        g.nodes[ident] = NodeRecord(ident, labels, props)
        g._out[ident] = []
        g._in[ident] = []
        g._next_node_id = max(g._next_node_id, ident + 1)
    for entry in payload.get("edges", []):
        if not isinstance(entry, dict) or set(entry) - _EDGE_FIELDS:
            raise FormatError(f"bad edge entry: {entry!r}")
        try:
            ident = int(entry["id"])
            source = int(entry["source"])
            target = int(entry["target"])
            type_ = entry["type"]
            props = {k: check_value(v) for k, v in dict(entry.get("properties", {})).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad edge entry: {exc}") from None
        if source not in g.nodes or target not in g.nodes:
            raise FormatError(f"edge {ident} references unknown node")
        if ident in g.edges:
            raise FormatError(f"duplicate edge id {ident}")
        g.edges[ident] = EdgeRecord(ident, source, target, type_, props)
        g._edge_key[g._key(source, target, type_)] = ident
        g._out[source].append(ident)
        g._in[target].append(ident)
        g._next_edge_id = max(g._next_edge_id, ident + 1)
    return g


def save_graph(g: PropertyGraph, path: str) -> None:
    """Write graph state to a path; .csv extension selects the CSV format."""
    if path.endswith(".csv"):
        export_csv_all(g, path, use_types=True)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(to_json(g, indent=2))
            handle.write("\n")


def load_graph(path: str, kind: str = "undirected") -> PropertyGraph:
    if not os.path.isfile(path):
        raise FileNotFound(path)
    if path.endswith(".csv"):
        return import_csv_all(path, use_types=True, kind=kind)
    with open(path, "r", encoding="utf-8") as handle:
        return from_json(handle.read())


def graph_fingerprint(g: PropertyGraph) -> str:
    """Stable content hash; equal graphs (and only they) share it."""
    return hashlib.sha256(to_json(g).encode("utf-8")).hexdigest()


def write_layout_file(
    g: PropertyGraph, layout_name: str, positions: LayoutMap, path: str
) -> None:
    """Layout JSON: {"layout": name, "positions": [{id, x, y, label}]}.

    The label is the node's name property when it has one, otherwise its
    sorted labels joined with ':', otherwise the id as text.
    """
    entries = []
    for node_id in sorted(positions):
        node = g.nodes[node_id]
        name = node.properties.get("name")
        if isinstance(name, str):
            label = name
        elif node.labels:
            label = ":".join(sorted(node.labels))
        else:
            label = str(node_id)
        x, y = positions[node_id]
        entries.append({"id": node_id, "x": x, "y": y, "label": label})
    with open(path, "w", encoding="utf-8") as handle:
        json.dump({"layout": layout_name, "positions": entries}, handle, indent=2)
        handle.write("\n")
