"""Small graph utilities shared by the lasso and closure checks."""
from collections import deque


def reachable(start, successors):
    """Return the set of nodes reachable from ``start`` (inclusive)."""
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in successors(node):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def sccs(nodes, successors):
    """Tarjan's algorithm, iterative.

    ``nodes`` is an iterable of hashable nodes and ``successors(n)`` must
    only yield members of ``nodes``. Returns a list of SCCs (lists of nodes)
    in reverse topological order.
    """
    index = {}
    low = {}
    on_stack = set()
    stack = []
    result = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors(root)))]
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(successors(nxt))))
                    advanced = True
                    break
                if nxt in on_stack and index[nxt] < low[node]:
                    low[node] = index[nxt]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                component = []
                while True:
                    top = stack.pop()
                    on_stack.discard(top)
                    component.append(top)
                    if top == node:
                        break
                result.append(component)
    return result
