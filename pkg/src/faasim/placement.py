"""Assignment of task-graph tasks to instances with limited slots.

The objective is the communication a placement leaves on the network:
bytes on edges whose endpoints sit on different instances, and the
number of logical messages after co-located tasks combine their traffic.
Message counting collapses all edges between an ordered instance pair
within one transfer round (the source task's level) to a single message,
and, matching the N^2 shuffle convention, a pair of an instance with
itself still counts as one combined message; only its bytes are free.

Two planners are provided: a deterministic greedy merge of the heaviest
edges, and an exhaustive optimum over set partitions for small graphs
that serves as the oracle the greedy is validated against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .workloads import TaskGraph, asap_levels

EXHAUSTIVE_TASK_LIMIT = 10


class PlacementError(ValueError):
    pass


@dataclass(frozen=True)
class PlacementProblem:
    graph: TaskGraph
    n_instances: int
    slots_per_instance: int

    def __post_init__(self):
        if self.n_instances < 1 or self.slots_per_instance < 1:
            raise PlacementError("need at least one instance and one slot")
        capacity = self.n_instances * self.slots_per_instance
        if capacity < self.graph.task_count:
            raise PlacementError(
                f"{self.graph.task_count} tasks exceed capacity {capacity} "
                f"({self.n_instances} instances x {self.slots_per_instance} slots)"
            )


class CommCost(NamedTuple):
    cross_instance_bytes: int
    remote_message_count: int


@dataclass(frozen=True)
class Placement:
    """Task id -> (instance, slot), with its communication metrics."""

    assignment: dict[str, tuple[int, int]]
    cross_instance_bytes: int
    remote_message_count: int

    def __post_init__(self):
        seats = list(self.assignment.values())
        if len(set(seats)) != len(seats):
            raise PlacementError("slot double-booked")

    def instance_of(self, task_id: str) -> int:
        return self.assignment[task_id][0]

    def to_json_dict(self) -> dict:
        return {
            "assignment": {tid: list(seat) for tid, seat in sorted(self.assignment.items())},
            "cross_instance_bytes": self.cross_instance_bytes,
            "remote_message_count": self.remote_message_count,
        }


def evaluate(assignment: dict[str, tuple[int, int]] | Placement, graph: TaskGraph) -> CommCost:
    """Communication cost of an assignment over a graph.

    Raises PlacementError if an edge references an unassigned task.
    """
    if isinstance(assignment, Placement):
        assignment = assignment.assignment
    level = asap_levels(graph)
    cross_bytes = 0
    messages: set[tuple[int, int, int]] = set()
    for edge in graph.edges:
        try:
            src_inst = assignment[edge.src][0]
            dst_inst = assignment[edge.dst][0]
        except KeyError as exc:
            raise PlacementError(f"task {exc.args[0]!r} is not assigned") from None
        if src_inst != dst_inst:
            cross_bytes += edge.bytes
        messages.add((src_inst, dst_inst, level[edge.src]))
    return CommCost(cross_bytes, len(messages))


def _seat(groups: list[list[str]], n_instances: int, slots: int) -> dict[str, tuple[int, int]]:
    """First-fit groups into instances; split any group that fits nowhere."""
    free = [slots] * n_instances
    assignment: dict[str, tuple[int, int]] = {}
    leftovers: list[str] = []

    def put(instance: int, members: list[str]):
        for member in members:
            assignment[member] = (instance, slots - free[instance])
            free[instance] -= 1

    for group in groups:
        target = next((i for i in range(n_instances) if free[i] >= len(group)), None)
        if target is None:
            leftovers.extend(group)
        else:
            put(target, group)
    for task_id in leftovers:
        target = next(i for i in range(n_instances) if free[i] >= 1)
        put(target, [task_id])
    return assignment


def place_greedy(problem: PlacementProblem) -> Placement:
    """Deterministic heavy-edge merging followed by first-fit packing.

    Edges are visited by descending bytes (ties by endpoint ids); the
    endpoint groups are merged whenever the union still fits in one
    instance. Merged groups are packed largest-first; anything that no
    longer fits falls back to task-at-a-time first fit.
    """
    graph, slots = problem.graph, problem.slots_per_instance
    parent = {t.id: t.id for t in graph.tasks}
    size = {t.id: 1 for t in graph.tasks}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in sorted(graph.edges, key=lambda e: (-e.bytes, e.src, e.dst)):
        root_a, root_b = find(edge.src), find(edge.dst)
        if root_a != root_b and size[root_a] + size[root_b] <= slots:
            parent[root_b] = root_a
            size[root_a] += size[root_b]

    members: dict[str, list[str]] = {}
    for task in graph.tasks:
        members.setdefault(find(task.id), []).append(task.id)
    groups = sorted(members.values(), key=lambda g: (-len(g), min(g)))
    for group in groups:
        group.sort()

    assignment = _seat(groups, problem.n_instances, slots)
    cost = evaluate(assignment, graph)
    return Placement(assignment, cost.cross_instance_bytes, cost.remote_message_count)


def place_exhaustive(problem: PlacementProblem) -> Placement:
    """Optimal placement by enumerating set partitions (guard: <= 10 tasks).

    Partitions are generated as restricted-growth strings, so the first
    optimum found is the lexicographically smallest assignment vector;
    cost compares (cross_instance_bytes, remote_message_count).
    """
    graph = problem.graph
    if graph.task_count > EXHAUSTIVE_TASK_LIMIT:
        raise PlacementError(
            f"exhaustive search is limited to {EXHAUSTIVE_TASK_LIMIT} tasks, got {graph.task_count}"
        )
    task_ids = sorted(t.id for t in graph.tasks)
    n, slots = problem.n_instances, problem.slots_per_instance
    level = asap_levels(graph)
    edges = [(task_ids.index(e.src), task_ids.index(e.dst), e.bytes, level[e.src]) for e in graph.edges]

    best_cost: CommCost | None = None
    best_vector: tuple[int, ...] | None = None
    labels = [0] * len(task_ids)
    counts = [0] * (len(task_ids) + 1)

    def cost_of(vector: list[int]) -> CommCost:
        cross = 0
        messages = set()
        for src, dst, nbytes, lvl in edges:
            if vector[src] != vector[dst]:
                cross += nbytes
            messages.add((vector[src], vector[dst], lvl))
        return CommCost(cross, len(messages))

    def recurse(index: int, used: int):
        nonlocal best_cost, best_vector
        if index == len(task_ids):
            cost = cost_of(labels)
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_vector = tuple(labels)
            return
        for label in range(min(used + 1, n)):
            if counts[label] >= slots:
                continue
            labels[index] = label
            counts[label] += 1
            recurse(index + 1, max(used, label + 1))
            counts[label] -= 1

    recurse(0, 0)
    if best_vector is None:
        raise PlacementError("no feasible placement")
    slot_counter = [0] * n
    assignment: dict[str, tuple[int, int]] = {}
    for task_id, instance in zip(task_ids, best_vector):
        assignment[task_id] = (instance, slot_counter[instance])
        slot_counter[instance] += 1
    return Placement(assignment, best_cost.cross_instance_bytes, best_cost.remote_message_count)


def singleton_placement(graph: TaskGraph) -> Placement:
    """Every task on its own instance: the no-co-location baseline."""
    assignment = {tid: (i, 0) for i, tid in enumerate(sorted(t.id for t in graph.tasks))}
    cost = evaluate(assignment, graph)
    return Placement(assignment, cost.cross_instance_bytes, cost.remote_message_count)
