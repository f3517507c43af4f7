"""Driver-style client for the grafion server.

Mirrors the familiar driver workflow: build a driver with an address and
credentials, open a session, run statements, iterate records.

    driver = GraphDatabase.driver("bolt://localhost:7687", auth=("neo4j", "pw"))
    with driver.session() as session:
        for record in session.run("MATCH (n:Person) RETURN n.name AS name"):
            print(record["name"])

The wire format is one JSON object per line over TCP; the first request
on every connection authenticates. `write_transaction` and
`read_transaction` are provided for API fidelity; both delegate to run
(the server infers read vs write from the statement itself).
"""

from __future__ import annotations

import json
import socket
from typing import Any, Callable, Iterator

__version__ = "0.1.0"

__all__ = [
    "GraphDatabase",
    "Driver",
    "Session",
    "Result",
    "Record",
    "ClientError",
    "AuthFailed",
    "ConnectionRefused",
    "ProtocolViolation",
    "QueryError",
]


class ClientError(Exception):
    """Base class for every error this client raises."""


class AuthFailed(ClientError):
    pass


class ConnectionRefused(ClientError):
    pass


class ProtocolViolation(ClientError):
    """The server sent something outside the line protocol."""


class QueryError(ClientError):
    """The server rejected or failed a statement."""

    def __init__(self, message: str, code: int, offset: int | None = None):
        self.code = code
        self.offset = offset
        super().__init__(message)


_ERROR_CODE_AUTH = 1


def _parse_uri(uri: str) -> tuple[str, int]:
    address = uri
    if "://" in address:
        address = address.split("://", 1)[1]
    host, _, port = address.rpartition(":")
    if not host or not port.isdigit():
        raise ClientError(f"expected host:port, got {uri!r}")
    return host, int(port)


class Record:
    """One result row; columns are accessible by name or position."""

    def __init__(self, columns: list[str], values: list[Any]):
        self._columns = columns
        self._values = values

    def __getitem__(self, key: str | int) -> Any:
        if isinstance(key, int):
            return self._values[key]
        try:
            return self._values[self._columns.index(key)]
        except ValueError:
            raise KeyError(key) from None

    def keys(self) -> list[str]:
        return list(self._columns)

    def values(self) -> list[Any]:
        return list(self._values)

    def data(self) -> dict[str, Any]:
        return dict(zip(self._columns, self._values))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in zip(self._columns, self._values))
        return f"<Record {inner}>"


class Result:
    """Buffered records from one statement, plus its summary counters."""

    def __init__(self, columns: list[str], rows: list[list], summary: dict):
        self.columns = columns
        self.summary = summary
        self._records = [Record(columns, row) for row in rows]

    def __iter__(self) -> Iterator[Record]:
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def single(self) -> Record:
        if len(self._records) != 1:
            raise ClientError(f"expected exactly one record, got {len(self._records)}")
        return self._records[0]

    def value(self, column: str | int = 0) -> list[Any]:
        return [record[column] for record in self._records]


class Session:
    """One authenticated connection; request ids increase monotonically."""

    def __init__(self, host: str, port: int, auth: tuple[str, str]):
        try:
            self._sock = socket.create_connection((host, port), timeout=30)
        except (ConnectionRefusedError, OSError) as exc:
            raise ConnectionRefused(f"cannot connect to {host}:{port}: {exc}") from None
        self._reader = self._sock.makefile("r", encoding="utf-8")
        self._next_id = 0
        user, password = auth
        response = self._request({"auth": {"user": user, "pass": password}})
        if not response.get("ok"):
            error = response.get("error", {})
            self.close()
            if error.get("code") == _ERROR_CODE_AUTH:
                raise AuthFailed(error.get("message", "authentication failed"))
            raise ProtocolViolation(error.get("message", "handshake failed"))

    def _request(self, payload: dict) -> dict:
        request_id = self._next_id
        self._next_id += 1
        message = json.dumps({"id": request_id, **payload}) + "\n"
        try:
            self._sock.sendall(message.encode("utf-8"))
            line = self._reader.readline()
        except OSError as exc:
            raise ConnectionRefused(f"connection lost: {exc}") from None
        if not line:
            raise ProtocolViolation("server closed the connection")
        try:
            response = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolViolation(f"bad response line: {exc}") from None
        if response.get("id") != request_id:
            raise ProtocolViolation(
                f"response id {response.get('id')} for request {request_id}"
            )
        return response

    def run(self, query: str, parameters: dict | None = None) -> Result:
        payload: dict[str, Any] = {"query": query}
        if parameters:
            payload["params"] = parameters
        response = self._request(payload)
        if not response.get("ok"):
            error = response.get("error", {})
            raise QueryError(error.get("message", "query failed"),
                             error.get("code", 0), error.get("offset"))
        return Result(response.get("columns", []), response.get("rows", []),
                      response.get("summary", {}))

    # transaction helpers exist for API fidelity; the server infers
    # read vs write per statement, so both delegate to run
    def write_transaction(self, work: Callable, *args, **kwargs) -> Any:
        return work(self, *args, **kwargs)

    def read_transaction(self, work: Callable, *args, **kwargs) -> Any:
        return work(self, *args, **kwargs)

    def ping(self) -> bool:
        return bool(self._request({"ping": True}).get("ok"))

    def close(self) -> None:
        try:
            self._sock.close()
        except OSError:
            pass

    def __enter__(self) -> "Session":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


class Driver:
    """Holds the address and credentials; connections are opened lazily."""

    def __init__(self, uri: str, auth: tuple[str, str]):
        self._host, self._port = _parse_uri(uri)
        self._auth = auth

    def session(self) -> Session:
        return Session(self._host, self._port, self._auth)

    def verify_connectivity(self) -> None:
        """Auth round-trip; raises AuthFailed or ConnectionRefused."""
        session = self.session()
        try:
            session.ping()
        finally:
            session.close()

    def close(self) -> None:
        pass  # nothing pooled

    def __enter__(self) -> "Driver":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


class GraphDatabase:
    @staticmethod
    def driver(uri: str, auth: tuple[str, str]) -> Driver:
        return Driver(uri, auth)
