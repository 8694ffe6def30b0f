"""Instance generator: depot, customers, demands, capacity and K_min from a GenSpec."""

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from src.config.settings import Settings, get_settings
from src.core.exceptions import GenerationError
from src.core.logging import get_logger
from src.models.binpack import BinPackProblem
from src.models.generation import (
    DEMAND_RANGES,
    LARGE_DEMAND_RANGE,
    QUADRANT_EVEN_RANGE,
    QUADRANT_ODD_RANGE,
    SMALL_DEMAND_RANGE,
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GeneratedInstance,
    GenSpec,
    GenTrace,
)
from src.models.routing import Instance, Point, format_instance_name
from src.services.binpack import k_min
from src.services.random_streams import RandomStream, derive_stream

logger = get_logger(__name__)

GRID_CENTER = Point(x=500, y=500)
GRID_CORNER = Point(x=0, y=0)

# Cluster seed count is drawn from UD[2, 6]
MIN_CLUSTER_SEEDS = 2
MAX_CLUSTER_SEEDS = 6


class CustomerPlacement(NamedTuple):
    """Placed customers; the first ``n_clustered`` came from the cluster rule."""

    points: list[Point]
    n_seeds: int | None
    n_clustered: int


def quadrant(point: Point, center: Point = GRID_CENTER) -> int:
    """Quadrant number of a point relative to a center, NE=1 counterclockwise.

    Points on a boundary line fall on the east / north side.
    """
    east = point.x >= center.x
    north = point.y >= center.y
    if north:
        return 1 if east else 2
    return 4 if east else 3


def compute_capacity(drawn_r: float, demands: list[int] | tuple[int, ...]) -> int:
    """Vehicle capacity for a target average route size.

    Args:
        drawn_r: Average route size draw at full precision.
        demands: Customer demands (non-empty).

    Returns:
        max(floor(drawn_r * sum / n), max demand).
    """
    if not demands:
        raise ValueError("capacity needs at least one demand")
    target = math.floor(drawn_r * sum(demands) / len(demands))
    return max(target, max(demands))


class InstanceGenerator:
    """Builds instances deterministically from a GenSpec.

    Every random draw comes from a stream derived from the spec's master
    seed and a purpose tag, so each stage is reproducible on its own.
    """

    def __init__(self, settings: Settings) -> None:
        """Initialize the generator.

        Args:
            settings: Toolkit settings (grid, cluster decay, rejection cap, SL bounds).
        """
        self.settings = settings
        self.grid = settings.grid_size

    def gen_depot(self, spec: GenSpec, stream: RandomStream) -> Point:
        """Depot location for the spec's depot positioning."""
        if spec.depot_pos is DepotPosition.CENTRAL:
            return GRID_CENTER
        if spec.depot_pos is DepotPosition.ECCENTRIC:
            return GRID_CORNER
        return Point(x=stream.randint(0, self.grid), y=stream.randint(0, self.grid))

    def _uniform_point(
        self, spec: GenSpec, positions: RandomStream, occupied: set[tuple[int, int]]
    ) -> Point:
        for _ in range(self.settings.max_candidates_per_point):
            x = positions.randint(0, self.grid)
            y = positions.randint(0, self.grid)
            if (x, y) not in occupied:
                occupied.add((x, y))
                return Point(x=x, y=y)
        raise self._exhausted(spec)

    def _exhausted(self, spec: GenSpec) -> GenerationError:
        return GenerationError(
            f"no free grid point within {self.settings.max_candidates_per_point} "
            f"candidates for {spec.label()}",
            details={"spec": spec.model_dump(mode="json")},
        )

    def _attraction(self, x: int, y: int, seeds: list[Point]) -> float:
        decay = self.settings.cluster_decay
        return sum(
            math.exp(-math.hypot(x - seed.x, y - seed.y) / decay) for seed in seeds
        )

    def attraction_peak(self, seeds: list[Point]) -> float:
        """Largest attraction over the whole grid."""
        axis = np.arange(self.grid + 1, dtype=np.float64)
        field = np.zeros((axis.size, axis.size))
        for seed in seeds:
            distance = np.hypot(axis[:, None] - seed.x, axis[None, :] - seed.y)
            field += np.exp(-distance / self.settings.cluster_decay)
        x, y = np.unravel_index(int(np.argmax(field)), field.shape)
        # the numpy field only locates the maximum; its value comes from _attraction
        return self._attraction(int(x), int(y), seeds)

    def _clustered_points(
        self,
        spec: GenSpec,
        count: int,
        positions: RandomStream,
        clusters: RandomStream,
        occupied: set[tuple[int, int]],
    ) -> tuple[list[Point], int]:
        n_seeds = min(clusters.randint(MIN_CLUSTER_SEEDS, MAX_CLUSTER_SEEDS), count)
        seeds = [self._uniform_point(spec, positions, occupied) for _ in range(n_seeds)]

        peak = self.attraction_peak(seeds)
        points = list(seeds)
        while len(points) < count:
            for _ in range(self.settings.max_candidates_per_point):
                x = positions.randint(0, self.grid)
                y = positions.randint(0, self.grid)
                if (x, y) in occupied:
                    continue
                weight = min(1.0, self._attraction(x, y, seeds) / peak)
                if clusters.bernoulli(weight):
                    occupied.add((x, y))
                    points.append(Point(x=x, y=y))
                    break
            else:
                raise self._exhausted(spec)
        return points, n_seeds

    def gen_customers(
        self,
        spec: GenSpec,
        depot: Point,
        positions: RandomStream,
        clusters: RandomStream,
    ) -> CustomerPlacement:
        """Place n_total - 1 distinct customers, none on the depot.

        Args:
            spec: Generation spec.
            depot: Already placed depot.
            positions: Stream for every coordinate draw.
            clusters: Stream for the seed count and acceptance coins.

        Returns:
            CustomerPlacement with the customers, the number of cluster seeds
            (None for random placement) and how many customers were clustered.

        Raises:
            GenerationError: If a point cannot be placed within the candidate cap.
        """
        occupied = {depot.as_tuple()}
        n = spec.n_customers

        if spec.customer_pos is CustomerPosition.RANDOM:
            points = [self._uniform_point(spec, positions, occupied) for _ in range(n)]
            return CustomerPlacement(points, None, 0)

        clustered = n if spec.customer_pos is CustomerPosition.CLUSTERED else -(-n // 2)
        points, n_seeds = self._clustered_points(
            spec, clustered, positions, clusters, occupied
        )
        points.extend(
            self._uniform_point(spec, positions, occupied) for _ in range(n - clustered)
        )
        return CustomerPlacement(points, n_seeds, clustered)

    def draw_route_size(self, spec: GenSpec, stream: RandomStream) -> float:
        """Average route size r, uniform over the route class interval."""
        low, high = spec.route_class.interval
        return stream.uniform(low, high)

    def gen_demands(
        self,
        spec: GenSpec,
        customers: list[Point],
        stream: RandomStream,
        center: Point = GRID_CENTER,
    ) -> tuple[list[int], float | None]:
        """Draw customer demands for the spec's distribution.

        Args:
            spec: Generation spec.
            customers: Placed customers (quadrant demands depend on them).
            stream: Demand stream.
            center: Reference point of the quadrant split.

        Returns:
            Demands and, for SL, the per-instance small-demand probability.
        """
        dist = spec.demand_dist
        if dist in DEMAND_RANGES:
            low, high = DEMAND_RANGES[dist]
            if low == high:
                return [low] * len(customers), None
            return [stream.randint(low, high) for _ in customers], None

        if dist is DemandDistribution.QUADRANT:
            demands = []
            for point in customers:
                even = quadrant(point, center) % 2 == 0
                low, high = QUADRANT_EVEN_RANGE if even else QUADRANT_ODD_RANGE
                demands.append(stream.randint(low, high))
            return demands, None

        small_fraction = stream.uniform(
            self.settings.sl_small_fraction_min, self.settings.sl_small_fraction_max
        )
        demands = []
        for _ in customers:
            low, high = (
                SMALL_DEMAND_RANGE if stream.bernoulli(small_fraction) else LARGE_DEMAND_RANGE
            )
            demands.append(stream.randint(low, high))
        return demands, small_fraction

    def generate_instance(self, spec: GenSpec) -> GeneratedInstance:
        """Generate one instance with its trace and K_min certificate.

        Args:
            spec: Attribute tuple, size and master seed.

        Returns:
            GeneratedInstance; an unproven K_min is flagged, not fatal.

        Raises:
            GenerationError: If customer placement exhausts the candidate cap.
        """
        seed = spec.master_seed
        depot = self.gen_depot(spec, derive_stream(seed, "depot"))
        placement = self.gen_customers(
            spec, depot, derive_stream(seed, "positions"), derive_stream(seed, "clusters")
        )
        customers = placement.points
        drawn_r = self.draw_route_size(spec, derive_stream(seed, "route_size"))
        demands, small_fraction = self.gen_demands(
            spec, customers, derive_stream(seed, "demands")
        )
        capacity = compute_capacity(drawn_r, demands)

        packing = k_min(
            BinPackProblem(items=tuple(demands), capacity=capacity),
            time_limit=self.settings.binpack_time_limit,
        )
        trace = GenTrace(
            drawn_r=drawn_r,
            n_cluster_seeds=placement.n_seeds,
            n_clustered=placement.n_clustered,
            small_fraction=small_fraction,
            sum_demand=sum(demands),
            capacity_formula_inputs=(drawn_r, sum(demands), len(demands)),
            route_class=spec.route_class,
        )
        instance = Instance(
            name=format_instance_name(spec.n_total, packing.bins),
            depot=depot,
            customers=tuple(customers),
            demands=tuple(demands),
            capacity=capacity,
            k_min=packing.bins,
            k_min_proven=packing.proven_optimal,
            comment=trace.summary(spec, packing.proven_optimal),
        )

        if not packing.proven_optimal:
            logger.warning(
                "kmin_unproven",
                name=instance.name,
                lower_bound=packing.lower_bound,
                bins=packing.bins,
                seed=seed,
            )
        logger.info(
            "instance_generated",
            name=instance.name,
            capacity=capacity,
            drawn_r=round(drawn_r, 3),
            kmin_method=packing.method.value,
            seed=seed,
        )
        return GeneratedInstance(spec=spec, instance=instance, trace=trace, binpack=packing)


@lru_cache
def get_instance_generator() -> InstanceGenerator:
    """Get a singleton InstanceGenerator built from the default settings."""
    return InstanceGenerator(get_settings())
