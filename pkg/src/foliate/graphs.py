"""Small directed-graph routines used throughout: SCCs, reachability, cycles."""

from __future__ import annotations

from collections import deque


def strongly_connected_components(nodes, succ):
    """Tarjan's algorithm, iterative.

    ``succ`` maps a node to an iterable of successors.  Returns a dict
    node -> component index.  Components are numbered in the order Tarjan
    completes them (reverse topological order of the condensation).
    """
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comp = {}
    counter = 0
    ncomp = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def bfs_path(succ, source, target):
    """Shortest directed path source -> target, or None.

    Successors are explored in ascending order, so among shortest paths the
    one that prefers smaller ids at the earliest branching is returned.
    """
    if source == target:
        return [source]
    parent = {source: None}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in sorted(succ.get(x, ())):
            if y in parent:
                continue
            parent[y] = x
            if y == target:
                path = [y]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(y)
    return None


def reachable(succ, source):
    seen = {source}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in succ.get(x, ()):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def find_cycle(nodes, succ):
    """Return one directed cycle as a node list (first == last), or None.

    Kahn's algorithm decides acyclicity; on failure a cycle is traced inside
    the leftover subgraph, starting from its smallest node.
    """
    nodes = list(nodes)
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for w in succ.get(v, ()):
            indeg[w] += 1
    queue = deque(v for v in nodes if indeg[v] == 0)
    removed = set()
    while queue:
        v = queue.popleft()
        removed.add(v)
        for w in succ.get(v, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(removed) == len(nodes):
        return None
    rest = set(nodes) - removed
    # every leftover node keeps a predecessor in ``rest``: walk backwards
    pred = {v: [] for v in rest}
    for v in rest:
        for w in succ.get(v, ()):
            if w in rest:
                pred[w].append(v)
    order = {}
    path = []
    v = min(rest)
    while v not in order:
        order[v] = len(path)
        path.append(v)
        v = min(pred[v])
    back = path[order[v]:]
    cycle = back[::-1]
    # rotate so the cycle starts at its smallest node
    i = cycle.index(min(cycle))
    cycle = cycle[i:] + cycle[:i]
    return cycle + [cycle[0]]
