"""Analyze signal-chain topology using DuckDB."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import TYPE_CHECKING

import duckdb

from .errors import TopologyError

if TYPE_CHECKING:
    from .models import Edge, NodeSpec

logger = logging.getLogger(__name__)

# Exact input counts per node kind; kinds not listed accept any number.
REQUIRED_INPUTS = {
    "master_oscillator": 0,
    "comb": 0,
    "awg": 0,
    "mixer": 2,
    "pll": 1,
}


def get_connection(path: str = ":memory:") -> duckdb.DuckDBPyConnection:
    """Get a DuckDB connection."""
    return duckdb.connect(path)


def create_schema(conn: duckdb.DuckDBPyConnection) -> None:
    """Create tables for chain nodes and signal lines."""
    conn.execute("""
        CREATE TABLE IF NOT EXISTS nodes (
            name VARCHAR PRIMARY KEY,
            kind VARCHAR NOT NULL
        )
    """)
    conn.execute("""
        CREATE TABLE IF NOT EXISTS edges (
            id INTEGER PRIMARY KEY,
            source VARCHAR NOT NULL,
            target VARCHAR NOT NULL,
            port INTEGER NOT NULL,
            tap INTEGER
        )
    """)
    conn.execute("CREATE INDEX IF NOT EXISTS idx_edges_source ON edges(source)")
    conn.execute("CREATE INDEX IF NOT EXISTS idx_edges_target ON edges(target)")


class TopologyAnalyzer:
    """Structural queries over a chain loaded into DuckDB."""

    def __init__(self, conn: duckdb.DuckDBPyConnection):
        self.conn = conn

    @classmethod
    def from_chain(cls, nodes: Sequence[NodeSpec], edges: Sequence[Edge]) -> TopologyAnalyzer:
        conn = get_connection()
        create_schema(conn)
        names = [node.name for node in nodes]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            conn.close()
            raise TopologyError(f"Duplicate node names: {', '.join(duplicates)}")
        if nodes:
            conn.executemany(
                "INSERT INTO nodes VALUES (?, ?)", [[node.name, node.kind] for node in nodes]
            )
        if edges:
            conn.executemany(
                "INSERT INTO edges VALUES (?, ?, ?, ?, ?)",
                [[i, e.source, e.target, e.port, e.tap] for i, e in enumerate(edges)],
            )
        return cls(conn)

    def close(self) -> None:
        self.conn.close()

    def dangling_edges(self) -> list[tuple[str, str]]:
        """Edges whose source or target is not a node."""
        result = self.conn.execute("""
            SELECT e.source, e.target
            FROM edges e
            LEFT JOIN nodes s ON e.source = s.name
            LEFT JOIN nodes t ON e.target = t.name
            WHERE s.name IS NULL OR t.name IS NULL
            ORDER BY e.id
        """).fetchall()
        return [(row[0], row[1]) for row in result]

    def in_degrees(self) -> dict[str, tuple[str, int]]:
        """Map node name -> (kind, number of incoming edges)."""
        result = self.conn.execute("""
            SELECT n.name, n.kind, COUNT(e.id) AS degree
            FROM nodes n
            LEFT JOIN edges e ON e.target = n.name
            GROUP BY n.name, n.kind
            ORDER BY n.name
        """).fetchall()
        return {row[0]: (row[1], row[2]) for row in result}

    def mixer_port_problems(self) -> list[str]:
        """Mixers whose two inputs do not occupy ports 0 and 1."""
        result = self.conn.execute("""
            SELECT n.name, list_sort(list(e.port)) AS ports
            FROM nodes n
            JOIN edges e ON e.target = n.name
            WHERE n.kind = 'mixer'
            GROUP BY n.name
            HAVING list_sort(list(e.port)) != [0, 1]
            ORDER BY n.name
        """).fetchall()
        return [f"{row[0]} uses ports {list(row[1])}, expected [0, 1]" for row in result]

    def detect_cycles(self) -> list[list[str]]:
        """Detect signal loops in the graph."""
        max_len = len(self.conn.execute("SELECT name FROM nodes").fetchall()) + 1
        result = self.conn.execute(
            """
            WITH RECURSIVE path AS (
                SELECT
                    source,
                    target,
                    [source, target] as nodes,
                    source = target as is_cycle
                FROM edges

                UNION ALL

                SELECT
                    p.source,
                    e.target,
                    list_append(p.nodes, e.target),
                    p.source = e.target
                FROM path p
                JOIN edges e ON p.target = e.source
                WHERE NOT list_contains(p.nodes[2:], e.target)
                  AND len(p.nodes) <= ?
                  AND NOT p.is_cycle
            )
            SELECT DISTINCT nodes
            FROM path
            WHERE is_cycle
            ORDER BY len(nodes), nodes
            """,
            [max_len],
        ).fetchall()
        return [list(row[0]) for row in result]

    def evaluation_order(self) -> list[str]:
        """Topological order: nodes sorted by longest distance from a source.

        Only meaningful on an acyclic graph.
        """
        result = self.conn.execute("""
            WITH RECURSIVE levels AS (
                SELECT name, 0 AS depth
                FROM nodes
                WHERE name NOT IN (SELECT target FROM edges)

                UNION ALL

                SELECT e.target, l.depth + 1
                FROM edges e
                JOIN levels l ON e.source = l.name
            )
            SELECT name, MAX(depth) AS depth
            FROM levels
            GROUP BY name
            ORDER BY depth, name
        """).fetchall()
        return [row[0] for row in result]


def analyze_topology(nodes: Sequence[NodeSpec], edges: Sequence[Edge]) -> tuple[str, ...]:
    """Validate a chain's wiring and return its evaluation order.

    Raises:
        TopologyError: on duplicate names, unknown endpoints, cycles, or
            wrong input counts.
    """
    analyzer = TopologyAnalyzer.from_chain(nodes, edges)
    try:
        dangling = analyzer.dangling_edges()
        if dangling:
            pairs = ", ".join(f"{s}->{t}" for s, t in dangling)
            raise TopologyError(f"Edges reference unknown nodes: {pairs}")

        cycles = analyzer.detect_cycles()
        if cycles:
            raise TopologyError(f"Signal loop: {' -> '.join(cycles[0])}")

        problems = []
        for name, (kind, degree) in analyzer.in_degrees().items():
            required = REQUIRED_INPUTS.get(kind)
            if required is not None and degree != required:
                problems.append(f"{name} ({kind}) has {degree} inputs, expected {required}")
        problems.extend(analyzer.mixer_port_problems())
        if problems:
            raise TopologyError("; ".join(problems))

        order = analyzer.evaluation_order()
        logger.debug(f"Chain evaluation order: {order}")
        return tuple(order)
    finally:
        analyzer.close()
