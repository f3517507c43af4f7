import random

import pytest

from grafion.errors import (
    BadArguments,
    ExecError,
    FileNotFound,
    MissingParameter,
    TypeMismatch,
    UnknownProcedure,
)
from grafion.graph import PropertyGraph
from grafion.query import run_query
from grafion.query.executor import EdgeSnapshot, NodeSnapshot, PathSnapshot
from grafion.storage import graph_fingerprint

from conftest import build


@pytest.fixture
def two_people():
    g = PropertyGraph("directed")
    run_query(g, "CREATE (a:Person {name: 'Alice'})")
    run_query(g, "CREATE (b:Person {name: 'Bob'})")
    return g


class TestBasics:
    def test_return_literal(self):
        g = PropertyGraph("directed")
        result = run_query(g, "RETURN 1 AS x")
        assert result.columns == ["x"]
        assert result.rows == [(1,)]

    def test_name_projection(self, two_people):
        result = run_query(two_people, "MATCH (n:Person) RETURN n.name AS name")
        assert result.columns == ["name"]
        assert result.rows == [("Alice",), ("Bob",)]

    def test_return_whole_node(self, two_people):
        result = run_query(two_people, "MATCH (n:Person) RETURN n")
        assert len(result.rows) == 2
        node = result.rows[0][0]
        assert isinstance(node, NodeSnapshot)
        assert node.labels == ["Person"]
        assert node.properties == {"name": "Alice"}

    def test_missing_property_is_null_not_error(self, two_people):
        result = run_query(two_people, "MATCH (n:Person) RETURN n.nothing AS x")
        assert result.rows == [(None,), (None,)]

    def test_null_comparison_filters_out(self, two_people):
        result = run_query(
            two_people, "MATCH (n:Person) WHERE n.age > 10 RETURN n.name AS name"
        )
        assert result.rows == []

    def test_default_column_name_is_expression_text(self, two_people):
        result = run_query(two_people, "MATCH (n:Person) RETURN n.name")
        assert result.columns == ["n.name"]

    def test_parameters(self, two_people):
        result = run_query(
            two_people,
            "MATCH (n:Person) WHERE n.name = $who RETURN n.name AS name",
            parameters={"who": "Bob"},
        )
        assert result.rows == [("Bob",)]

    def test_missing_parameter(self, two_people):
        with pytest.raises(MissingParameter):
            run_query(two_people, "MATCH (n) WHERE n.name = $who RETURN n")


class TestCreate:
    def test_create_counts(self):
        g = PropertyGraph("directed")
        result = run_query(g, "CREATE (a:Person {name: 'Alice', age: 30})")
        assert result.summary.nodes_created == 1
        assert result.summary.properties_set == 2
        assert g.node_count() == 1

    def test_relationship_creation_and_match(self, two_people):
        created = run_query(
            two_people,
            "MATCH (a:Person {name: 'Alice'}), (b:Person {name: 'Bob'}) "
            "CREATE (a)-[:FRIEND]->(b)",
        )
        assert created.summary.relationships_created == 1
        result = run_query(
            two_people,
            "MATCH (a)-[r:FRIEND]->(b) RETURN a.name AS a, b.name AS b",
        )
        assert result.rows == [("Alice", "Bob")]

    def test_create_then_match_within_statement(self):
        g = PropertyGraph("directed")
        result = run_query(
            g, "CREATE (a:City {name: 'Rome'}) RETURN a.name AS name"
        )
        assert result.rows == [("Rome",)]

    def test_create_edge_with_properties(self, two_people):
        run_query(
            two_people,
            "MATCH (a:Person {name: 'Alice'}), (b:Person {name: 'Bob'}) "
            "CREATE (a)-[:FRIEND {since: 2015, closeness: 4}]->(b)",
        )
        result = run_query(
            two_people, "MATCH (a)-[r:FRIEND]->(b) RETURN r.since AS s, r.closeness AS c"
        )
        assert result.rows == [(2015, 4)]

    def test_counters_match_store_delta(self):
        g = PropertyGraph("directed")
        before_nodes, before_edges = g.node_count(), g.edge_count()
        result = run_query(
            g,
            "CREATE (a:X {p: 1}), (b:X {p: 2}), (a)-[:R {w: 1}]->(b)",
        )
        assert result.summary.nodes_created == g.node_count() - before_nodes == 2
        assert result.summary.relationships_created == g.edge_count() - before_edges == 1
        assert result.summary.properties_set == 3


class TestSetDelete:
    def test_set_node_property(self, two_people):
        result = run_query(
            two_people, "MATCH (a:Person {name: 'Alice'}) SET a.age = 31"
        )
        assert result.summary.properties_set == 1
        check = run_query(two_people, "MATCH (a:Person {name: 'Alice'}) RETURN a.age AS age")
        assert check.rows == [(31,)]

    def test_set_edge_property(self, two_people):
        run_query(
            two_people,
            "MATCH (a:Person {name: 'Alice'}), (b:Person {name: 'Bob'}) "
            "CREATE (a)-[:KNOWS]->(b)",
        )
        run_query(two_people, "MATCH (a)-[r:KNOWS]->(b) SET r.since = 2021")
        result = run_query(two_people, "MATCH (a)-[r:KNOWS]->(b) RETURN r.since AS s")
        assert result.rows == [(2021,)]

    def test_delete_edge(self, two_people):
        run_query(
            two_people,
            "MATCH (a:Person {name: 'Alice'}), (b:Person {name: 'Bob'}) "
            "CREATE (a)-[:CONNECTS]->(b)",
        )
        result = run_query(two_people, "MATCH (n1)-[r:CONNECTS]->(n2) DELETE r")
        assert result.summary.relationships_deleted == 1
        assert two_people.edge_count() == 0

    def test_detach_delete(self, two_people):
        run_query(
            two_people,
            "MATCH (a:Person {name: 'Alice'}), (b:Person {name: 'Bob'}) "
            "CREATE (a)-[:F]->(b)",
        )
        result = run_query(two_people, "MATCH (n:Person {name: 'Alice'}) DETACH DELETE n")
        assert result.summary.nodes_deleted == 1
        assert result.summary.relationships_deleted == 1
        assert two_people.node_count() == 1

    def test_plain_delete_with_edges_fails(self, two_people):
        from grafion.errors import NodeHasEdges

        run_query(
            two_people,
            "MATCH (a:Person {name: 'Alice'}), (b:Person {name: 'Bob'}) "
            "CREATE (a)-[:F]->(b)",
        )
        with pytest.raises(NodeHasEdges):
            run_query(two_people, "MATCH (n:Person {name: 'Alice'}) DELETE n")


class TestReadOnlyInvariance:
    READ_QUERIES = [
        "MATCH (n) RETURN n",
        "MATCH (n:Person) RETURN n.name AS name",
        "MATCH (a)-[r:FRIEND]->(b) RETURN a, r, b",
        "MATCH (n) RETURN count(*) AS c",
        "MATCH (n:Person) WHERE n.age > 0 RETURN n.name AS n ORDER BY n LIMIT 2",
    ]

    def test_read_queries_leave_store_bit_identical(self, social_network):
        g, _ = social_network
        before = graph_fingerprint(g)
        for text in self.READ_QUERIES:
            run_query(g, text)
            assert graph_fingerprint(g) == before, text


class TestAggregation:
    def test_count_star_groups(self, social_network):
        g, _ = social_network
        result = run_query(
            g,
            "MATCH (p:Person)-[:FRIEND]-(f) RETURN p.name AS Name, "
            "COUNT(f) AS DegreeCentrality ORDER BY DegreeCentrality DESC",
        )
        assert result.columns == ["Name", "DegreeCentrality"]
        counts = dict(result.rows)
        assert counts == {"Alice": 2, "Bob": 2, "Charlie": 2, "David": 2, "Eve": 2}

    def test_count_star_over_zero_rows(self):
        g = PropertyGraph("directed")
        result = run_query(g, "MATCH (n:Missing) RETURN count(*) AS c")
        assert result.rows == [(0,)]

    def test_collect(self, social_network):
        g, _ = social_network
        result = run_query(
            g,
            "MATCH (p:Person {name: 'Alice'})-[:FRIEND]-(f) "
            "RETURN collect(f) AS friends",
        )
        assert len(result.rows) == 1
        friends = result.rows[0][0]
        assert sorted(n.properties["name"] for n in friends) == ["Bob", "Charlie"]

    def test_distinct_rows(self, social_network):
        g, _ = social_network
        result = run_query(
            g, "MATCH (a:Person)-[:FRIEND]-(b:Person) RETURN DISTINCT a.city AS city"
        )
        assert len(result.rows) == 5

    def test_order_by_nulls_last_and_stable(self):
        g = PropertyGraph("directed")
        for name, age in [("a", 3), ("b", None), ("c", 1), ("d", 2)]:
            props = f"{{name: '{name}', age: {age}}}" if age is not None else f"{{name: '{name}'}}"
            run_query(g, f"CREATE (:P {props})")
        result = run_query(g, "MATCH (n:P) RETURN n.name AS name, n.age AS age ORDER BY age")
        assert [r[0] for r in result.rows] == ["c", "d", "a", "b"]
        result = run_query(
            g, "MATCH (n:P) RETURN n.name AS name, n.age AS age ORDER BY age DESC"
        )
        assert [r[0] for r in result.rows] == ["a", "d", "c", "b"]

    def test_order_by_mixed_types_rejected(self):
        g = PropertyGraph("directed")
        run_query(g, "CREATE (:P {v: 1})")
        run_query(g, "CREATE (:P {v: 'text'})")
        with pytest.raises(TypeMismatch):
            run_query(g, "MATCH (n:P) RETURN n.v AS v ORDER BY v")

    def test_limit(self, social_network):
        g, _ = social_network
        result = run_query(g, "MATCH (n:Person) RETURN n.name AS name LIMIT 2")
        assert result.rows == [("Alice",), ("Bob",)]


class TestFixtures:
    def test_fraud_query_finds_single_transfer(self):
        g = PropertyGraph("directed")
        run_query(g, "CREATE (:Account {name: 'acc1', region: 'EU'})")
        run_query(g, "CREATE (:Account {name: 'acc2', region: 'US'})")
        run_query(g, "CREATE (:Account {name: 'acc3', region: 'EU'})")
        # three transfers; only acc1->acc2 is large and cross-region
        run_query(g, "MATCH (a:Account {name: 'acc1'}), (b:Account {name: 'acc2'}) "
                     "CREATE (a)-[:TRANSFER {amount: 15000}]->(b)")
        run_query(g, "MATCH (a:Account {name: 'acc1'}), (b:Account {name: 'acc3'}) "
                     "CREATE (a)-[:TRANSFER {amount: 20000}]->(b)")
        run_query(g, "MATCH (a:Account {name: 'acc2'}), (b:Account {name: 'acc1'}) "
                     "CREATE (a)-[:TRANSFER {amount: 500}]->(b)")
        result = run_query(
            g,
            "MATCH (a:Account)-[t:TRANSFER]->(b:Account) "
            "WHERE t.amount > 10000 AND a.region <> b.region RETURN a, b, t.amount",
        )
        assert len(result.rows) == 1
        a, b, amount = result.rows[0]
        assert a.properties["name"] == "acc1"
        assert b.properties["name"] == "acc2"
        assert amount == 15000

    def test_shortest_path_query(self):
        g = PropertyGraph("directed")
        for name in ("A", "B", "C"):
            run_query(g, f"CREATE (:Node {{name: '{name}'}})")
        run_query(g, "MATCH (a:Node {name: 'A'}), (c:Node {name: 'C'}) "
                     "CREATE (a)-[:CONNECTS]->(c)")
        run_query(g, "MATCH (c:Node {name: 'C'}), (b:Node {name: 'B'}) "
                     "CREATE (c)-[:CONNECTS]->(b)")
        result = run_query(
            g,
            "MATCH (start:Node {name: 'A'}), (end:Node {name: 'B'}) "
            "MATCH path = shortestPath((start)-[*]-(end)) RETURN path;",
        )
        assert len(result.rows) == 1
        path = result.rows[0][0]
        assert isinstance(path, PathSnapshot)
        assert [n.properties["name"] for n in path.nodes] == ["A", "C", "B"]

    def test_shortest_path_after_deleting_bridge(self):
        g = PropertyGraph("directed")
        for name in ("A", "B", "C"):
            run_query(g, f"CREATE (:Node {{name: '{name}'}})")
        run_query(g, "MATCH (a:Node {name: 'A'}), (c:Node {name: 'C'}) "
                     "CREATE (a)-[:CONNECTS]->(c)")
        run_query(g, "MATCH (c:Node {name: 'C'}), (b:Node {name: 'B'}) "
                     "CREATE (c)-[:CONNECTS]->(b)")
        run_query(g, "MATCH (n1:Node {name: 'A'})-[r:CONNECTS]->(n2:Node {name: 'C'}) DELETE r;")
        result = run_query(
            g,
            "MATCH (start:Node {name: 'A'}), (end:Node {name: 'B'}) "
            "MATCH path = shortestPath((start)-[*]-(end)) RETURN path",
        )
        assert result.rows == []

    def test_collaborative_filtering(self):
        g = PropertyGraph("directed")
        people = {"u": ["m1", "m2", "m3"], "alice": ["m1", "m2", "m3"],
                  "bob": ["m1", "m2"], "carol": ["m1"]}
        for user in people:
            run_query(g, f"CREATE (:User {{name: '{user}'}})")
        for movie in ("m1", "m2", "m3"):
            run_query(g, f"CREATE (:Movie {{name: '{movie}'}})")
        for user, movies in people.items():
            for movie in movies:
                run_query(g, f"MATCH (u:User {{name: '{user}'}}), (m:Movie {{name: '{movie}'}}) "
                             f"CREATE (u)-[:RATED]->(m)")
        result = run_query(
            g,
            "MATCH (u:User {name: 'u'})-[r:RATED]->(m:Movie) WITH u, collect(m) AS movies "
            "MATCH (u2:User)-[r:RATED]->(m2:Movie) WHERE u <> u2 AND m2 IN movies "
            "RETURN u2.name AS SimilarUser, count(*) AS SharedInterests "
            "ORDER BY SharedInterests DESC LIMIT 5",
        )
        assert result.columns == ["SimilarUser", "SharedInterests"]
        assert result.rows == [("alice", 3), ("bob", 2), ("carol", 1)]

    def test_union_style_unwind(self):
        g = PropertyGraph("directed")
        for name in ("x", "y"):
            run_query(g, f"CREATE (:Person {{name: '{name}'}})")
        run_query(g, "MATCH (a:Person {name: 'x'}), (b:Person {name: 'y'}) "
                     "CREATE (a)-[:KNOWS]->(b)")
        result = run_query(
            g,
            "MATCH (a:Person)-[:KNOWS]-(b:Person) "
            "WITH collect(DISTINCT a) + collect(DISTINCT b) AS nodes "
            "UNWIND nodes AS n RETURN n",
        )
        names = {row[0].properties["name"] for row in result.rows}
        assert names == {"x", "y"}

    def test_concat_non_lists_rejected(self):
        g = PropertyGraph("directed")
        with pytest.raises(TypeMismatch):
            run_query(g, "RETURN 1 + 2 AS x")

    def test_load_csv(self, tmp_path):
        path = tmp_path / "people.csv"
        path.write_text("name,age,city\nAlice,30,New York\nBob,25,Los Angeles\n")
        g = PropertyGraph("directed")
        result = run_query(
            g,
            "LOAD CSV WITH HEADERS FROM 'file:///people.csv' AS row "
            "CREATE (p:Person {name: row.name, age: toInteger(row.age), city: row.city})",
            import_dir=str(tmp_path),
        )
        assert result.summary.nodes_created == 2
        check = run_query(g, "MATCH (p:Person {name: 'Alice'}) RETURN p.age AS age")
        assert check.rows == [(30,)]
        assert isinstance(check.rows[0][0], int)

    def test_load_csv_missing_file(self, tmp_path):
        g = PropertyGraph("directed")
        with pytest.raises(FileNotFound):
            run_query(g, "LOAD CSV WITH HEADERS FROM 'file:///nope.csv' AS row "
                         "CREATE (:X {v: row.a})", import_dir=str(tmp_path))

    def test_create_index_via_query(self, two_people):
        run_query(two_people, "CREATE INDEX FOR (n:Person) ON (n.name)")
        assert ("Person", "name") in two_people.indexes
        result = run_query(
            two_people, "MATCH (n:Person {name: 'Alice'}) RETURN n.name AS name"
        )
        assert result.rows == [("Alice",)]

    def test_scalar_functions(self):
        g = PropertyGraph("directed")
        assert run_query(g, "RETURN toInteger('30') AS x").rows == [(30,)]
        assert run_query(g, "RETURN toInteger('abc') AS x").rows == [(None,)]
        assert run_query(g, "RETURN toFloat('2.5') AS x").rows == [(2.5,)]
        assert run_query(g, "RETURN toInteger('3.9') AS x").rows == [(3,)]


class TestPatternPredicates:
    def build_two_typed(self):
        g = PropertyGraph("undirected")
        for name in "abcd":
            run_query(g, f"CREATE (:P {{name: '{name}'}})")
        pairs = {"FRIENDS": [("a", "b"), ("b", "c"), ("c", "d")],
                 "COLLEAGUES": [("b", "c")]}
        for type_, edges in pairs.items():
            for u, v in edges:
                run_query(g, f"MATCH (x:P {{name: '{u}'}}), (y:P {{name: '{v}'}}) "
                             f"CREATE (x)-[:{type_}]->(y)")
        return g

    def test_intersection_predicate(self):
        g = self.build_two_typed()
        result = run_query(
            g,
            "MATCH (a)-[r:FRIENDS]-(b) WHERE (a)-[:COLLEAGUES]-(b) "
            "RETURN a.name AS a, b.name AS b",
        )
        assert {(r[0], r[1]) for r in result.rows} == {("b", "c"), ("c", "b")}

    def test_negated_predicate(self):
        g = self.build_two_typed()
        result = run_query(
            g,
            "MATCH (a)-[r:FRIENDS]-(b) WHERE NOT (a)-[:COLLEAGUES]-(b) "
            "RETURN a.name AS a, b.name AS b",
        )
        assert {(r[0], r[1]) for r in result.rows} == {
            ("a", "b"), ("b", "a"), ("c", "d"), ("d", "c"),
        }

    def test_pattern_predicate_equals_explicit_join(self):
        # brute-force check on small random two-type graphs
        rng = random.Random(23)
        for _ in range(20):
            g = PropertyGraph("undirected")
            n = rng.randint(2, 6)
            for i in range(n):
                g.add_node({"P"}, {"name": f"n{i}"})
            for u in range(n):
                for v in range(u + 1, n):
                    if rng.random() < 0.4:
                        g.add_edge(u, v, "F")
                    if rng.random() < 0.3:
                        g.add_edge(u, v, "C")
            via_predicate = run_query(
                g, "MATCH (a)-[r:F]-(b) WHERE (a)-[:C]-(b) RETURN a.name AS x, b.name AS y"
            )
            expected = set()
            for e in g.edges.values():
                if e.type != "F":
                    continue
                for s, t in [(e.source, e.target), (e.target, e.source)]:
                    if g.find_edge(s, t, "C") is not None:
                        expected.add((g.nodes[s].properties["name"],
                                      g.nodes[t].properties["name"]))
            assert {(r[0], r[1]) for r in via_predicate.rows} == expected


class TestProcedures:
    def test_wcc_groups_components(self):
        g = PropertyGraph("undirected")
        for name in ("n1", "n2", "n3", "n4", "n5"):
            run_query(g, f"CREATE (:Node {{name: '{name}'}})")
        for u, v in [("n1", "n2"), ("n2", "n3"), ("n4", "n5")]:
            run_query(g, f"MATCH (a:Node {{name: '{u}'}}), (b:Node {{name: '{v}'}}) "
                         f"CREATE (a)-[:CONNECTS]->(b)")
        result = run_query(
            g,
            "CALL gds.wcc.stream({nodeProjection: 'Node', relationshipProjection: 'CONNECTS'}) "
            "YIELD componentId, nodeId "
            "RETURN componentId, gds.util.asNode(nodeId).name AS nodeName",
        )
        groups = {}
        for component, name in result.rows:
            groups.setdefault(component, set()).add(name)
        assert set(map(frozenset, groups.values())) == {
            frozenset({"n1", "n2", "n3"}), frozenset({"n4", "n5"}),
        }

    def test_dijkstra_stream_cumulative_costs(self):
        g = PropertyGraph("undirected")
        for name in ("A", "B", "C"):
            g.add_node({"Location"}, {"name": name})
        g.add_edge(0, 2, "ROAD", {"distance": 5})   # A - C
        g.add_edge(2, 1, "ROAD", {"distance": 5})   # C - B
        g.add_edge(0, 1, "ROAD", {"distance": 12})  # A - B direct
        result = run_query(
            g,
            'MATCH (start:Location {name: "A"}), (end:Location {name: "B"}) '
            "CALL gds.shortestPath.dijkstra.stream({sourceNode: start, targetNode: end, "
            "relationshipWeightProperty: 'distance'}) "
            "YIELD nodeId, cost RETURN gds.util.asNode(nodeId).name AS node, cost",
        )
        assert result.rows == [("A", 0.0), ("C", 5.0), ("B", 10.0)]

    def test_pagerank_stream_matches_library(self):
        from grafion.algorithms import pagerank

        g = PropertyGraph("directed")
        for i in range(1, 5):
            g.add_node({"N"}, {"name": f"n{i}"})
        for u, v in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 1)]:
            g.add_edge(u, v, "L")
        result = run_query(
            g,
            "CALL gds.pageRank.stream('myGraph') YIELD nodeId, score "
            "RETURN gds.util.asNode(nodeId).name AS Name, score ORDER BY score DESC",
        )
        want = pagerank(g)
        got = {name: score for name, score in result.rows}
        for i, node in enumerate(g.node_ids()):
            assert got[f"n{i + 1}"] == pytest.approx(want[node], abs=1e-9)
        scores = [row[1] for row in result.rows]
        assert scores == sorted(scores, reverse=True)

    def test_louvain_stream_on_directed_store(self, two_triangles):
        # louvain procedure works on the undirected view of a directed store
        g = PropertyGraph("directed")
        for i in range(6):
            g.add_node({"N"}, {"name": f"n{i}"})
        for u, v in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]:
            g.add_edge(u, v, "L")
        result = run_query(
            g,
            "CALL gds.louvain.stream('myGraph') YIELD nodeId, communityId "
            "RETURN gds.util.asNode(nodeId).name AS Name, communityId ORDER BY communityId",
        )
        communities = {}
        for name, community in result.rows:
            communities.setdefault(community, set()).add(name)
        assert set(map(frozenset, communities.values())) == {
            frozenset({"n0", "n1", "n2"}), frozenset({"n3", "n4", "n5"}),
        }

    def test_export_procedure(self, tmp_path, two_people):
        result = run_query(
            two_people,
            "CALL apoc.export.csv.all('exported_graph.csv', {useTypes: true, delimiter: ';'})",
            import_dir=str(tmp_path),
        )
        assert result.columns == ["file", "nodes", "relationships"]
        assert result.rows[0][1] == 2
        assert (tmp_path / "exported_graph.csv").exists()

    def test_unknown_procedure(self):
        g = PropertyGraph("directed")
        with pytest.raises(UnknownProcedure):
            run_query(g, "CALL gds.nonsense.stream('x')")

    def test_bad_yield_name(self):
        g = PropertyGraph("directed")
        g.add_node()
        with pytest.raises(BadArguments):
            run_query(g, "CALL gds.wcc.stream() YIELD bogus RETURN bogus")


class TestCallProcedureSurface:
    def test_direct_call(self):
        from grafion.query import call_procedure

        g = PropertyGraph("undirected")
        for _ in range(5):
            g.add_node()
        for u, v in [(0, 1), (1, 2), (3, 4)]:
            g.add_edge(u, v, "L")
        result = call_procedure(g, "gds.wcc.stream")
        assert result.columns == ["nodeId", "componentId"]
        groups = {}
        for node, comp in result.rows:
            groups.setdefault(comp, set()).add(node)
        assert sorted(groups.values(), key=min) == [{0, 1, 2}, {3, 4}]

    def test_direct_dijkstra_with_node_refs(self):
        from grafion.query import call_procedure
        from grafion.query.executor import NodeRef

        g = PropertyGraph("undirected")
        for _ in range(3):
            g.add_node()
        g.add_edge(0, 2, "R", {"distance": 5})
        g.add_edge(2, 1, "R", {"distance": 5})
        g.add_edge(0, 1, "R", {"distance": 12})
        result = call_procedure(
            g, "gds.shortestPath.dijkstra.stream",
            [{"sourceNode": NodeRef(0), "targetNode": NodeRef(1),
              "relationshipWeightProperty": "distance"}],
        )
        assert result.rows == [(0, 0.0), (2, 5.0), (1, 10.0)]

    def test_unknown_name(self):
        from grafion.query import call_procedure

        g = PropertyGraph("directed")
        with pytest.raises(UnknownProcedure):
            call_procedure(g, "gds.bogus")
