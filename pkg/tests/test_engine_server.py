import json
import random
import socket
import threading
import time

import pytest

from grafion.engine import GraphEngine
from grafion.errors import NodeHasEdges
from grafion.graph import PropertyGraph
from grafion.server import GraphServer
from grafion.storage import graph_fingerprint


class TestEngine:
    def test_read_and_write(self):
        engine = GraphEngine()
        engine.run("CREATE (:P {name: 'a'})")
        result = engine.run("MATCH (n:P) RETURN n.name AS name")
        assert result.rows == [("a",)]

    def test_failed_write_leaves_store_untouched(self):
        engine = GraphEngine()
        engine.run("CREATE (a:P {name: 'a'}), (b:P {name: 'b'}), (a)-[:R]->(b)")
        before = graph_fingerprint(engine.graph)
        # DELETE without DETACH on a connected node fails halfway through
        with pytest.raises(NodeHasEdges):
            engine.run("MATCH (n:P) DELETE n")
        assert graph_fingerprint(engine.graph) == before

    def test_concurrent_writers_serialize(self):
        engine = GraphEngine()
        errors = []

        def writer(tag):
            try:
                for i in range(50):
                    engine.run(f"CREATE (:T {{tag: '{tag}', i: {i}}})")
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [threading.Thread(target=writer, args=(t,)) for t in ("a", "b")]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        result = engine.run("MATCH (n:T) RETURN count(*) AS c")
        assert result.rows == [(100,)]

    def test_concurrent_readers_with_writer(self):
        engine = GraphEngine()
        engine.run("CREATE (:P {v: 0})")
        stop = threading.Event()
        bad = []

        def reader():
            while not stop.is_set():
                rows = engine.run("MATCH (n:P) RETURN count(*) AS c").rows
                if rows[0][0] < 1:
                    bad.append(rows)

        threads = [threading.Thread(target=reader) for _ in range(3)]
        for t in threads:
            t.start()
        for i in range(30):
            engine.run(f"CREATE (:Q {{i: {i}}})")
        stop.set()
        for t in threads:
            t.join()
        assert not bad


def send_line(sock, payload):
    sock.sendall((json.dumps(payload) + "\n").encode())


def recv_line(reader):
    line = reader.readline()
    if not line:
        return None
    return json.loads(line)


class Client:
    def __init__(self, address):
        self.sock = socket.create_connection(address, timeout=10)
        self.reader = self.sock.makefile("r", encoding="utf-8")
        self.counter = 0

    def request(self, payload):
        payload = {"id": self.counter, **payload}
        self.counter += 1
        send_line(self.sock, payload)
        return recv_line(self.reader)

    def auth(self, user="neo4j", password="secret"):
        return self.request({"auth": {"user": user, "pass": password}})

    def query(self, text, params=None):
        body = {"query": text}
        if params:
            body["params"] = params
        return self.request(body)

    def close(self):
        try:
            self.sock.close()
        except Exception:
            pass


@pytest.fixture
def server():
    server = GraphServer(bind=("localhost", 0), user="neo4j", password="secret")
    server.start()
    yield server
    server.stop()


class TestServer:
    def test_auth_ok(self, server):
        client = Client(server.address)
        response = client.auth()
        assert response == {"id": 0, "ok": True}

    def test_auth_failure(self, server):
        client = Client(server.address)
        response = client.auth(password="wrong")
        assert response["ok"] is False
        assert response["error"]["code"] == 1

    def test_query_before_auth_closes_connection(self, server):
        client = Client(server.address)
        response = client.query("RETURN 1 AS x")
        assert response["error"]["code"] == 4
        assert recv_line(client.reader) is None  # connection closed

    def test_name_projection_over_wire(self, server):
        client = Client(server.address)
        client.auth()
        client.query("CREATE (:Person {name: 'Alice'})")
        client.query("CREATE (:Person {name: 'Bob'})")
        response = client.query("MATCH (n:Person) RETURN n.name AS name")
        assert response["ok"] is True
        assert response["columns"] == ["name"]
        assert response["rows"] == [["Alice"], ["Bob"]]

    def test_node_cells_serialize_as_objects(self, server):
        client = Client(server.address)
        client.auth()
        client.query("CREATE (:Person {name: 'Alice'})")
        response = client.query("MATCH (n:Person) RETURN n")
        node = response["rows"][0][0]
        assert node["labels"] == ["Person"]
        assert node["properties"] == {"name": "Alice"}

    def test_parse_error_code_and_offset(self, server):
        client = Client(server.address)
        client.auth()
        response = client.query("MATCH RETURN")
        assert response["error"]["code"] == 2
        assert response["error"]["offset"] == 6

    def test_exec_error_code(self, server):
        client = Client(server.address)
        client.auth()
        response = client.query("RETURN 1 + 2 AS x")
        assert response["error"]["code"] == 3

    def test_malformed_json_then_close(self, server):
        client = Client(server.address)
        client.auth()
        client.sock.sendall(b"this is not json\n")
        response = recv_line(client.reader)
        assert response["ok"] is False
        assert response["error"]["code"] == 4
        assert recv_line(client.reader) is None

    def test_ping(self, server):
        client = Client(server.address)
        client.auth()
        assert client.request({"ping": True})["ok"] is True

    def test_responses_in_request_order(self, server):
        client = Client(server.address)
        client.auth()
        for i in range(20):
            send_line(client.sock, {"id": 100 + i, "query": f"RETURN {i} AS x"})
        for i in range(20):
            response = recv_line(client.reader)
            assert response["id"] == 100 + i
            assert response["rows"] == [[i]]

    def test_interleaved_writes_serialize(self, server):
        # two clients, 100 interleaved writes each; result equals a serial run
        def script(tag, results):
            client = Client(server.address)
            client.auth()
            for i in range(100):
                response = client.query(f"CREATE (:W {{tag: '{tag}', i: {i}}})")
                results.append(response["ok"])

        results_a, results_b = [], []
        threads = [
            threading.Thread(target=script, args=("a", results_a)),
            threading.Thread(target=script, args=("b", results_b)),
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(results_a) and all(results_b)

        check = Client(server.address)
        check.auth()
        response = check.query("MATCH (n:W) RETURN n.tag AS tag, count(*) AS c ORDER BY tag")
        assert response["rows"] == [["a", 100], ["b", 100]]
        # the store equals a serial execution: every (tag, i) pair exactly once
        listing = check.query("MATCH (n:W) RETURN n.tag AS tag, n.i AS i")
        pairs = {(r[0], r[1]) for r in listing["rows"]}
        assert pairs == {(t, i) for t in ("a", "b") for i in range(100)}

    def test_last_writer_wins_some_serial_order(self, server):
        setup = Client(server.address)
        setup.auth()
        setup.query("CREATE (:Counter {name: 'c', v: -1})")

        def bump(value):
            client = Client(server.address)
            client.auth()
            for i in range(25):
                client.query(f"MATCH (n:Counter {{name: 'c'}}) SET n.v = {value + i}")

        threads = [threading.Thread(target=bump, args=(v,)) for v in (1000, 2000)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        final = setup.query("MATCH (n:Counter) RETURN n.v AS v")["rows"][0][0]
        # the last write of one of the two scripts
        assert final in (1024, 2024)

    def test_dropped_connection_mid_write_keeps_store_consistent(self, server):
        client = Client(server.address)
        client.auth()
        client.query("CREATE (:D {name: 'base'})")
        # fire a write and slam the socket shut without reading the response
        send_line(client.sock, {"id": 99, "query": "CREATE (a:D {name: 'x'}), (b:D {name: 'y'}), (a)-[:R]->(b)"})
        client.sock.close()
        time.sleep(0.3)

        check = Client(server.address)
        check.auth()
        response = check.query("MATCH (n:D) RETURN count(*) AS c")
        count = response["rows"][0][0]
        assert count in (1, 3)  # statement fully applied or not at all
        graph = server.engine.graph
        for edge in graph.edges.values():
            assert edge.source in graph.nodes and edge.target in graph.nodes
