"""Metric trees with marked points on nodes or in the interior of edges."""

from collections import deque
from typing import Hashable, NamedTuple

from .errors import InvalidSpace


class TreeLocation(NamedTuple):
    """A point of a metric tree: ``offset`` along the edge ``u -> v``.

    Nodes are stored as ``(node, node, 0.0)``.
    """

    u: Hashable
    v: Hashable
    offset: float

    @property
    def is_node(self):
        return self.u == self.v

    def to_json(self):
        if self.is_node:
            return {"node": self.u}
        return {"edge": [self.u, self.v], "offset": self.offset}


class TreeGeometry:
    def __init__(self, nodes, edges):
        self.nodes = list(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidSpace("duplicate tree node ids")
        known = set(self.nodes)
        self.adj = {n: [] for n in self.nodes}
        self.lengths = {}
        for a, b, length in edges:
            if a not in known or b not in known:
                raise InvalidSpace(f"edge ({a!r}, {b!r}) references an unknown node")
            if a == b:
                raise InvalidSpace(f"self-loop at node {a!r}")
            length = float(length)
            if not length > 0:
                raise InvalidSpace(f"edge ({a!r}, {b!r}) must have positive length")
            key = frozenset((a, b))
            if key in self.lengths:
                raise InvalidSpace(f"parallel edge ({a!r}, {b!r})")
            self.lengths[key] = length
            self.adj[a].append((b, length))
            self.adj[b].append((a, length))
        if len(self.lengths) != len(self.nodes) - 1:
            raise InvalidSpace("a tree on n nodes needs exactly n-1 edges")
        self._dist = {}
        self._parent = {}
        for root in self.nodes:
            dist, parent = self._sweep(root)
            if len(dist) != len(self.nodes):
                raise InvalidSpace("tree edges do not connect all nodes")
            self._dist[root] = dist
            self._parent[root] = parent

    def _sweep(self, root):
        dist = {root: 0.0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, length in self.adj[a]:
                if b not in dist:
                    dist[b] = dist[a] + length
                    parent[b] = a
                    queue.append(b)
        return dist, parent

    def edge_length(self, u, v):
        if u == v:
            return 0.0
        try:
            return self.lengths[frozenset((u, v))]
        except KeyError:
            raise InvalidSpace(f"no edge between {u!r} and {v!r}") from None

    def locate(self, where):
        """Canonical location from a JSON-style descriptor or an existing location."""
        if isinstance(where, TreeLocation):
            u, v, t = where
        elif "node" in where:
            u = v = where["node"]
            t = 0.0
        else:
            u, v = where["edge"]
            t = float(where["offset"])
        if u == v:
            if u not in self.adj:
                raise InvalidSpace(f"unknown node {u!r}")
            return TreeLocation(u, u, 0.0)
        length = self.edge_length(u, v)
        if t < 0 or t > length:
            raise InvalidSpace(f"offset {t} outside edge ({u!r}, {v!r}) of length {length}")
        if t == 0:
            return TreeLocation(u, u, 0.0)
        if t == length:
            return TreeLocation(v, v, 0.0)
        return TreeLocation(u, v, t)

    def _exits(self, p):
        """(endpoint node, distance from p to that endpoint) pairs."""
        if p.is_node:
            return [(p.u, 0.0)]
        length = self.edge_length(p.u, p.v)
        return [(p.u, p.offset), (p.v, length - p.offset)]

    def _same_edge(self, p, q):
        return not p.is_node and not q.is_node and {p.u, p.v} == {q.u, q.v}

    def _offset_from(self, p, u):
        return p.offset if p.u == u else self.edge_length(p.u, p.v) - p.offset

    def dist(self, p, q):
        if self._same_edge(p, q):
            return abs(p.offset - self._offset_from(q, p.u))
        return min(a + self._dist[x][y] + b for x, a in self._exits(p) for y, b in self._exits(q))

    def point_along(self, p, q, s):
        """The point at distance ``s`` from ``p`` on the geodesic towards ``q``."""
        total = self.dist(p, q)
        s = min(max(s, 0.0), total)
        if self._same_edge(p, q):
            target = self._offset_from(q, p.u)
            step = s if target >= p.offset else -s
            return self.locate(TreeLocation(p.u, p.v, p.offset + step))
        best = None
        for x, a in self._exits(p):
            for y, b in self._exits(q):
                cost = a + self._dist[x][y] + b
                if best is None or cost < best[0]:
                    best = (cost, x, a, y, b)
        _, x, a, y, b = best
        if s <= a:
            return self._slide(p, x, s)
        s -= a
        node = x
        parent = self._parent[y]
        while node != y:
            nxt = parent[node]
            length = self.edge_length(node, nxt)
            if s <= length:
                return self.locate(TreeLocation(node, nxt, s))
            s -= length
            node = nxt
        # remaining distance runs from y towards q
        if q.is_node:
            return q
        return self._slide(q, y, b - s)

    def _slide(self, p, endpoint, s):
        """Move from ``p`` a distance ``s`` towards the endpoint of its edge."""
        if p.is_node:
            return p
        if endpoint == p.u:
            return self.locate(TreeLocation(p.u, p.v, max(p.offset - s, 0.0)))
        length = self.edge_length(p.u, p.v)
        return self.locate(TreeLocation(p.u, p.v, min(p.offset + s, length)))
