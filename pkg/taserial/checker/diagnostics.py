"""Precedence graph of a run. Reported alongside verdicts, never used to decide them."""
import networkx as nx

from .cleansing import cleanse


def conflict_graph(trace, machines=None):
    """
    Edge ``(M, N)`` iff a surviving step of ``M`` precedes a conflicting surviving step of ``N``:
    both access one location and at least one of them writes it

    :rtype: networkx.DiGraph
    """
    machines = list(machines) if machines is not None else list(trace.machines())
    accesses = []
    for m in machines:
        for entry in cleanse(trace, m).entries:
            writes = frozenset(entry.updates.locations())
            reads = frozenset(location for location, _ in entry.reads)
            accesses.append((entry.step, m, reads, writes))
    accesses.sort(key=lambda access: (access[0], access[1]))
    graph = nx.DiGraph()
    graph.add_nodes_from(machines)
    for i, (step, m, reads, writes) in enumerate(accesses):
        for later, n, other_reads, other_writes in accesses[i + 1:]:
            if n == m or later == step:
                continue
            if writes & (other_reads | other_writes) or reads & other_writes:
                graph.add_edge(m, n)
    return graph


def is_conflict_serializable(trace, machines=None):
    return nx.is_directed_acyclic_graph(conflict_graph(trace, machines))
