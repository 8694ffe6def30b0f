"""Local search moves with O(1) delta evaluation.

Every operator works on a pair (u, v) of customers, v taken from u's
granular neighbourhood, and offers one or more variants. ``delta`` returns
the exact cost change of a capacity-feasible move, or None when the move is
infeasible or a no-op; ``apply`` performs it and updates the state's cost.
"""

from typing import ClassVar, Protocol

from src.models.solver import MoveKind
from src.solver.state import DEPOT, RoutingState


class MoveOperator(Protocol):
    """Interface shared by every neighbourhood."""

    kind: ClassVar[MoveKind]
    variants: ClassVar[tuple[int, ...]]

    def delta(self, state: RoutingState, u: int, v: int, variant: int) -> int | None: ...

    def apply(self, state: RoutingState, u: int, v: int, variant: int) -> None: ...


class Relocate:
    """Move u next to v: variant 0 inserts after v, variant 1 before v."""

    kind: ClassVar[MoveKind] = MoveKind.RELOCATE
    variants: ClassVar[tuple[int, ...]] = (0, 1)

    @staticmethod
    def _slot(state: RoutingState, v: int, variant: int) -> tuple[int, int]:
        return (v, state.next(v)) if variant == 0 else (state.prev(v), v)

    def delta(self, state: RoutingState, u: int, v: int, variant: int) -> int | None:
        if u == v:
            return None
        a, b = self._slot(state, v, variant)
        if u in (a, b):
            return None
        same_route = state.route_of[u] == state.route_of[v]
        if not same_route and (
            state.loads[state.route_of[v]] + state.demand[u] > state.capacity
        ):
            return None
        pu, nu = state.prev(u), state.next(u)
        removed = state.d(pu, u) + state.d(u, nu) - state.d(pu, nu)
        added = state.d(a, u) + state.d(u, b) - state.d(a, b)
        return added - removed

    def apply(self, state: RoutingState, u: int, v: int, variant: int) -> None:
        change = self.delta(state, u, v, variant)
        if change is None:
            return
        source, target = state.route_of[u], state.route_of[v]
        state.routes[source].pop(state.pos[u])
        route = state.routes[target]
        index = route.index(v)
        route.insert(index + 1 if variant == 0 else index, u)
        state.refresh(source)
        if target != source:
            state.refresh(target)
        state.cost += change


class Swap:
    """Exchange the positions of u and v."""

    kind: ClassVar[MoveKind] = MoveKind.SWAP
    variants: ClassVar[tuple[int, ...]] = (0,)

    def delta(self, state: RoutingState, u: int, v: int, variant: int) -> int | None:
        if u == v:
            return None
        ru, rv = state.route_of[u], state.route_of[v]
        if ru != rv:
            du, dv = state.demand[u], state.demand[v]
            if (
                state.loads[ru] - du + dv > state.capacity
                or state.loads[rv] - dv + du > state.capacity
            ):
                return None
        pu, nu = state.prev(u), state.next(u)
        pv, nv = state.prev(v), state.next(v)
        d = state.d
        if ru == rv and nu == v:
            return d(pu, v) + d(u, nv) - d(pu, u) - d(v, nv)
        if ru == rv and nv == u:
            return d(pv, u) + d(v, nu) - d(pv, v) - d(u, nu)
        return (
            d(pu, v) + d(v, nu) - d(pu, u) - d(u, nu)
            + d(pv, u) + d(u, nv) - d(pv, v) - d(v, nv)
        )

    def apply(self, state: RoutingState, u: int, v: int, variant: int) -> None:
        change = self.delta(state, u, v, variant)
        if change is None:
            return
        ru, rv = state.route_of[u], state.route_of[v]
        iu, iv = state.pos[u], state.pos[v]
        state.routes[ru][iu], state.routes[rv][iv] = v, u
        state.refresh(ru)
        if rv != ru:
            state.refresh(rv)
        state.cost += change


class TwoOptIntra:
    """Reverse a segment of one route so that u and v become adjacent.

    With u before v, variant 0 replaces (u, u+) (v, v+) by (u, v) (u+, v+);
    variant 1 replaces (u-, u) (v-, v) by (u-, v-) (u, v).
    """

    kind: ClassVar[MoveKind] = MoveKind.TWO_OPT_INTRA
    variants: ClassVar[tuple[int, ...]] = (0, 1)

    @staticmethod
    def _ordered(state: RoutingState, u: int, v: int) -> tuple[int, int] | None:
        if u == v or state.route_of[u] != state.route_of[v]:
            return None
        if state.pos[u] > state.pos[v]:
            u, v = v, u
        if state.pos[v] - state.pos[u] < 2:
            return None
        return u, v

    def delta(self, state: RoutingState, u: int, v: int, variant: int) -> int | None:
        ordered = self._ordered(state, u, v)
        if ordered is None:
            return None
        u, v = ordered
        d = state.d
        if variant == 0:
            nu, nv = state.next(u), state.next(v)
            return d(u, v) + d(nu, nv) - d(u, nu) - d(v, nv)
        pu, pv = state.prev(u), state.prev(v)
        return d(pu, pv) + d(u, v) - d(pu, u) - d(pv, v)

    def apply(self, state: RoutingState, u: int, v: int, variant: int) -> None:
        change = self.delta(state, u, v, variant)
        if change is None:
            return
        ordered = self._ordered(state, u, v)
        if ordered is None:
            return
        u, v = ordered
        route_id = state.route_of[u]
        route = state.routes[route_id]
        i, j = state.pos[u], state.pos[v]
        if variant == 0:
            route[i + 1 : j + 1] = route[i + 1 : j + 1][::-1]
        else:
            route[i:j] = route[i:j][::-1]
        state.refresh(route_id)
        state.cost += change


class TwoOptStar:
    """Exchange route tails between the routes of u and v.

    Variant 0 joins u to v's tail and v to u's tail. Variant 1 joins u to v
    and the two tails to each other, reversing the pieces involved.
    """

    kind: ClassVar[MoveKind] = MoveKind.TWO_OPT_STAR
    variants: ClassVar[tuple[int, ...]] = (0, 1)

    def delta(self, state: RoutingState, u: int, v: int, variant: int) -> int | None:
        ru, rv = state.route_of[u], state.route_of[v]
        if ru == rv:
            return None
        head_u, head_v = state.prefix[u], state.prefix[v]
        tail_u = state.loads[ru] - head_u
        tail_v = state.loads[rv] - head_v
        nu, nv = state.next(u), state.next(v)
        d = state.d
        if variant == 0:
            if head_u + tail_v > state.capacity or head_v + tail_u > state.capacity:
                return None
            if nu == DEPOT and nv == DEPOT:
                return None
            return d(u, nv) + d(v, nu) - d(u, nu) - d(v, nv)
        if head_u + head_v > state.capacity or tail_u + tail_v > state.capacity:
            return None
        return d(u, v) + d(nu, nv) - d(u, nu) - d(v, nv)

    def apply(self, state: RoutingState, u: int, v: int, variant: int) -> None:
        change = self.delta(state, u, v, variant)
        if change is None:
            return
        ru, rv = state.route_of[u], state.route_of[v]
        route_u, route_v = state.routes[ru], state.routes[rv]
        cut_u, cut_v = state.pos[u] + 1, state.pos[v] + 1
        head_u, tail_u = route_u[:cut_u], route_u[cut_u:]
        head_v, tail_v = route_v[:cut_v], route_v[cut_v:]
        if variant == 0:
            state.routes[ru] = head_u + tail_v
            state.routes[rv] = head_v + tail_u
        else:
            state.routes[ru] = head_u + head_v[::-1]
            state.routes[rv] = tail_u[::-1] + tail_v
        state.refresh(ru)
        state.refresh(rv)
        state.cost += change


OPERATORS: dict[MoveKind, MoveOperator] = {
    MoveKind.RELOCATE: Relocate(),
    MoveKind.SWAP: Swap(),
    MoveKind.TWO_OPT_INTRA: TwoOptIntra(),
    MoveKind.TWO_OPT_STAR: TwoOptStar(),
}


def operators_for(kinds: frozenset[MoveKind]) -> list[MoveOperator]:
    """Enabled operators in a fixed order."""
    return [OPERATORS[kind] for kind in MoveKind if kind in kinds]
