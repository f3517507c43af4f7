"""Line-delimited JSON request/response server over TCP.

One JSON object per newline-terminated line in each direction. The
first request on a connection must authenticate; afterwards query
requests execute under the engine's lease discipline. Responses echo
the request id and arrive strictly in request order per connection.

Error codes: 1 auth failed, 2 parse error, 3 execution error,
4 protocol error.
"""

from __future__ import annotations

import json
import socketserver
import threading

from .engine import GraphEngine
from .errors import (
    ExecError,
    GrafionError,
    LexError,
    ParseError,
    QueryError,
    UnboundVariable,
)
from .query.executor import cell_to_jsonable

DEFAULT_BIND = ("localhost", 7687)

CODE_AUTH = 1
CODE_PARSE = 2
CODE_EXEC = 3
CODE_PROTOCOL = 4


def _error_payload(request_id, code: int, message: str, offset=None) -> dict:
    error = {"code": code, "message": message}
    if offset is not None:
        error["offset"] = offset
    return {"id": request_id, "ok": False, "error": error}


class _Handler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        try:
            self._serve_connection()
        except (ConnectionResetError, BrokenPipeError, TimeoutError):
            pass  # client vanished; any in-flight write already committed or not

    def _serve_connection(self) -> None:
        server: GraphServer = self.server  # type: ignore[assignment]
        authenticated = False
        for raw in self.rfile:
            line = raw.decode("utf-8", errors="replace").strip()
            if not line:
                continue
            try:
                request = json.loads(line)
                if not isinstance(request, dict):
                    raise ValueError("request must be an object")
            except ValueError as exc:
                self._send(_error_payload(None, CODE_PROTOCOL, f"bad request: {exc}"))
                return  # malformed JSON closes the connection
            request_id = request.get("id")
            if "auth" in request:
                auth = request.get("auth") or {}
                if (auth.get("user"), auth.get("pass")) == server.credentials:
                    authenticated = True
                    self._send({"id": request_id, "ok": True})
                else:
                    self._send(_error_payload(request_id, CODE_AUTH, "bad credentials"))
                continue
            if not authenticated:
                self._send(_error_payload(
                    request_id, CODE_PROTOCOL, "authenticate first"))
                return
            if request.get("ping"):
                self._send({"id": request_id, "ok": True})
                continue
            if "query" not in request:
                self._send(_error_payload(
                    request_id, CODE_PROTOCOL, "expected auth, query, or ping"))
                return
            self._run_query(server, request_id, request)

    def _run_query(self, server: "GraphServer", request_id, request: dict) -> None:
        query = request.get("query")
        params = request.get("params") or {}
        if not isinstance(query, str) or not isinstance(params, dict):
            self._send(_error_payload(request_id, CODE_PROTOCOL, "bad query request"))
            return
        try:
            result = server.engine.run(query, params)
        except (LexError, ParseError, UnboundVariable) as exc:
            self._send(_error_payload(request_id, CODE_PARSE, str(exc),
                                      getattr(exc, "offset", None)))
            return
        except GrafionError as exc:
            offset = exc.offset if isinstance(exc, QueryError) else None
            self._send(_error_payload(request_id, CODE_EXEC, str(exc), offset))
            return
        self._send({
            "id": request_id,
            "ok": True,
            "columns": result.columns,
            "rows": [[cell_to_jsonable(cell) for cell in row] for row in result.rows],
            "summary": result.summary.as_dict(),
        })

    def _send(self, payload: dict) -> None:
        try:
            self.wfile.write(json.dumps(payload).encode("utf-8") + b"\n")
            self.wfile.flush()
        except (BrokenPipeError, ConnectionResetError):
            pass  # client went away; engine state is already consistent


class _ThreadingServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


class GraphServer:
    """Embeddable server; serve() blocks, start()/stop() run it threaded."""

    def __init__(
        self,
        engine: GraphEngine | None = None,
        bind: tuple[str, int] = DEFAULT_BIND,
        user: str = "neo4j",
        password: str = "",
    ):
        self.engine = engine if engine is not None else GraphEngine()
        self.credentials = (user, password)
        self._tcp = _ThreadingServer(bind, _Handler)
        self._tcp.engine = self.engine  # type: ignore[attr-defined]
        self._tcp.credentials = self.credentials  # type: ignore[attr-defined]
        self._thread: threading.Thread | None = None

    @property
    def address(self) -> tuple[str, int]:
        return self._tcp.server_address

    def serve(self) -> None:
        self._tcp.serve_forever()

    def start(self) -> None:
        self._thread = threading.Thread(target=self._tcp.serve_forever, daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._tcp.shutdown()
        self._tcp.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)


def serve(
    bind: tuple[str, int] = DEFAULT_BIND,
    user: str = "neo4j",
    password: str = "",
    engine: GraphEngine | None = None,
) -> None:
    GraphServer(engine, bind, user, password).serve()
