"""Statement engine: lease discipline and single-statement atomicity.

Any number of read statements may run concurrently; a write statement
holds the exclusive lease. Writes execute against a copy of the store
and swap it in atomically on success, so a failing or abandoned
statement leaves the graph untouched and interleaved clients always
observe some serial order of their statements.
"""

from __future__ import annotations

import threading

from .graph import PropertyGraph
from .query import RowSet, execute
from .query.ast import Statement, statement_writes
from .query.parser import parse_statement


class ReadWriteLock:
    """Many readers or one writer; writers are not starved forever in
    practice because the lock is only held per statement."""

    def __init__(self):
        self._condition = threading.Condition()
        self._readers = 0
        self._writer = False

    def acquire_read(self) -> None:
        with self._condition:
            while self._writer:
                self._condition.wait()
            self._readers += 1

    def release_read(self) -> None:
        with self._condition:
            self._readers -= 1
            if self._readers == 0:
                self._condition.notify_all()

    def acquire_write(self) -> None:
        with self._condition:
            while self._writer or self._readers:
                self._condition.wait()
            self._writer = True

    def release_write(self) -> None:
        with self._condition:
            self._writer = False
            self._condition.notify_all()


class GraphEngine:
    """Serializable statement execution over one shared graph."""

    def __init__(self, graph: PropertyGraph | None = None, import_dir: str | None = None):
        self.graph = graph if graph is not None else PropertyGraph("directed")
        self.import_dir = import_dir
        self._lock = ReadWriteLock()

    def run(self, query: str | Statement, parameters: dict | None = None) -> RowSet:
        statement = parse_statement(query) if isinstance(query, str) else query
        if statement_writes(statement):
            self._lock.acquire_write()
            try:
                # execute against a copy; swap in only on success
                trial = self.graph.copy()
                result = execute(trial, statement, parameters, self.import_dir)
                self.graph = trial
                return result
            finally:
                self._lock.release_write()
        self._lock.acquire_read()
        try:
            return execute(self.graph, statement, parameters, self.import_dir)
        finally:
            self._lock.release_read()
