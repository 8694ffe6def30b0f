"""Unit tests for the instance generator."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config.settings import Settings
from src.core.exceptions import GenerationError
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GenSpec,
    RouteClass,
)
from src.models.routing import Point, parse_instance_name
from src.services.generator import (
    GRID_CENTER,
    InstanceGenerator,
    compute_capacity,
    get_instance_generator,
    quadrant,
)
from src.services.random_streams import derive_stream

# Upper 1% point of the chi-square distribution with 99 degrees of freedom
CHI_SQUARE_99_DF_P01 = 134.642


def _spec(**overrides: object) -> GenSpec:
    values: dict[str, object] = {
        "n_total": 101,
        "depot_pos": DepotPosition.RANDOM,
        "customer_pos": CustomerPosition.RANDOM,
        "demand_dist": DemandDistribution.D1_100,
        "route_class": RouteClass.MEDIUM,
        "master_seed": 1,
    }
    values.update(overrides)
    return GenSpec(**values)  # type: ignore[arg-type]


@pytest.fixture
def generator(test_settings: Settings) -> InstanceGenerator:
    """Provide a generator with a short bin-packing budget."""
    return InstanceGenerator(test_settings)


class TestHelpers:
    """Tests for quadrant and capacity helpers."""

    @pytest.mark.parametrize(
        ("point", "expected"),
        [
            (Point(x=700, y=700), 1),
            (Point(x=100, y=900), 2),
            (Point(x=100, y=100), 3),
            (Point(x=900, y=100), 4),
            (Point(x=500, y=500), 1),
            (Point(x=499, y=500), 2),
            (Point(x=500, y=499), 4),
        ],
    )
    def test_quadrant(self, point: Point, expected: int) -> None:
        """Test quadrant numbering, boundaries going east and north."""
        assert quadrant(point, GRID_CENTER) == expected

    def test_capacity_formula(self) -> None:
        """Test floor(r * sum / n)."""
        assert compute_capacity(7.8, [1] * 1093) == 7

    def test_capacity_at_least_max_demand(self) -> None:
        """Test that Q never falls below the largest demand."""
        assert compute_capacity(3.0, [1, 1, 1, 100]) == 100

    def test_capacity_needs_demands(self) -> None:
        """Test that an empty demand list is an error."""
        with pytest.raises(ValueError):
            compute_capacity(5.0, [])


class TestDepot:
    """Tests for depot placement."""

    def test_central_depot(self, generator: InstanceGenerator) -> None:
        """Test that a central depot sits at (500, 500)."""
        spec = _spec(depot_pos=DepotPosition.CENTRAL)

        assert generator.gen_depot(spec, derive_stream(1, "depot")) == Point(x=500, y=500)

    def test_eccentric_depot(self, generator: InstanceGenerator) -> None:
        """Test that an eccentric depot sits at the origin corner."""
        spec = _spec(depot_pos=DepotPosition.ECCENTRIC)

        assert generator.gen_depot(spec, derive_stream(1, "depot")) == Point(x=0, y=0)


class TestCustomers:
    """Tests for customer placement."""

    @pytest.mark.parametrize("position", list(CustomerPosition))
    def test_distinct_points(
        self, generator: InstanceGenerator, position: CustomerPosition
    ) -> None:
        """Test that customers are distinct and never on the depot."""
        spec = _spec(customer_pos=position, n_total=301)
        depot = Point(x=500, y=500)

        points = generator.gen_customers(
            spec, depot, derive_stream(1, "positions"), derive_stream(1, "clusters")
        ).points

        keys = {point.as_tuple() for point in points}
        assert len(points) == 300
        assert len(keys) == 300
        assert depot.as_tuple() not in keys

    def test_random_has_no_seed_count(self, generator: InstanceGenerator) -> None:
        """Test that random placement reports no cluster seeds."""
        placement = generator.gen_customers(
            _spec(), Point(x=0, y=0), derive_stream(1, "positions"), derive_stream(1, "clusters")
        )

        assert placement.n_seeds is None
        assert placement.n_clustered == 0

    @given(st.integers(min_value=0, max_value=2**64 - 1))
    @settings(max_examples=30, deadline=None)
    def test_seed_count_in_range(self, seed: int) -> None:
        """Test that the number of cluster seeds is in [2, 6]."""
        generator = InstanceGenerator(Settings())
        spec = _spec(customer_pos=CustomerPosition.CLUSTERED, n_total=31, master_seed=seed)

        n_seeds = generator.gen_customers(
            spec,
            Point(x=500, y=500),
            derive_stream(seed, "positions"),
            derive_stream(seed, "clusters"),
        ).n_seeds

        assert n_seeds is not None
        assert 2 <= n_seeds <= 6

    def test_clustered_points_are_concentrated(self, generator: InstanceGenerator) -> None:
        """Test that clustered customers lie closer together than random ones."""

        def mean_nearest(points: list[Point]) -> float:
            total = 0.0
            for a in points:
                total += min(math.dist(a.as_tuple(), b.as_tuple()) for b in points if b != a)
            return total / len(points)

        depot = Point(x=500, y=500)
        clustered = generator.gen_customers(
            _spec(customer_pos=CustomerPosition.CLUSTERED, n_total=201),
            depot,
            derive_stream(4, "positions"),
            derive_stream(4, "clusters"),
        ).points
        uniform = generator.gen_customers(
            _spec(n_total=201), depot, derive_stream(4, "positions"), derive_stream(4, "clusters")
        ).points

        assert mean_nearest(clustered) < mean_nearest(uniform)

    def test_candidate_cap_exhausted(self) -> None:
        """Test that a full grid raises GenerationError."""
        generator = InstanceGenerator(Settings(grid_size=3, max_candidates_per_point=50))
        spec = _spec(n_total=20)

        with pytest.raises(GenerationError):
            generator.gen_customers(
                spec, Point(x=0, y=0), derive_stream(1, "positions"), derive_stream(1, "clusters")
            )

    @given(
        st.integers(min_value=0, max_value=2**64 - 1),
        st.integers(min_value=21, max_value=81),
    )
    @settings(max_examples=25, deadline=None)
    def test_mixed_placement_clusters_half(self, seed: int, n_total: int) -> None:
        """Test that RC clusters exactly ceil((n_total - 1) / 2) customers."""
        generator = InstanceGenerator(Settings())
        depot = Point(x=500, y=500)
        mixed = generator.gen_customers(
            _spec(customer_pos=CustomerPosition.RANDOM_CLUSTERED, n_total=n_total),
            depot,
            derive_stream(seed, "positions"),
            derive_stream(seed, "clusters"),
        )
        expected = math.ceil((n_total - 1) / 2)
        clustered_only = generator.gen_customers(
            _spec(customer_pos=CustomerPosition.CLUSTERED, n_total=expected + 1),
            depot,
            derive_stream(seed, "positions"),
            derive_stream(seed, "clusters"),
        )

        assert mixed.n_clustered == expected
        assert len(mixed.points) == n_total - 1
        assert mixed.points[:expected] == clustered_only.points

    def test_flat_attraction_is_uniform(self) -> None:
        """Test that a huge decay scale leaves clustering uniform (chi-square)."""
        generator = InstanceGenerator(Settings(cluster_decay=1e12))
        spec = _spec(customer_pos=CustomerPosition.CLUSTERED, n_total=10_001)

        points = generator.gen_customers(
            spec,
            Point(x=500, y=500),
            derive_stream(11, "positions"),
            derive_stream(11, "clusters"),
        ).points

        # 10 x 10 cells; 1001 grid values per axis split into bands of 100 or 101
        band = np.arange(1001) * 10 // 1001
        widths = np.bincount(band, minlength=10) / 1001
        expected = len(points) * np.outer(widths, widths).ravel()
        cells = [band[p.x] * 10 + band[p.y] for p in points]
        observed = np.bincount(cells, minlength=100)
        statistic = float(((observed - expected) ** 2 / expected).sum())

        assert len(points) == 10_000
        assert statistic < CHI_SQUARE_99_DF_P01

    def test_attraction_peak_covers_grid(self) -> None:
        """Test that the acceptance normaliser is the grid maximum, not a seed value."""
        generator = InstanceGenerator(Settings())
        seeds = [Point(x=500, y=500), Point(x=510, y=500), Point(x=505, y=509)]

        peak = generator.attraction_peak(seeds)

        # the centroid of three close seeds attracts more than any seed does
        at_seeds = max(generator._attraction(s.x, s.y, seeds) for s in seeds)
        at_centroid = generator._attraction(505, 503, seeds)
        assert at_centroid > at_seeds
        assert peak >= at_centroid
        assert peak <= len(seeds)


class TestDemands:
    """Tests for demand distributions."""

    @pytest.mark.parametrize(
        ("dist", "low", "high"),
        [
            (DemandDistribution.UNITARY, 1, 1),
            (DemandDistribution.D1_10, 1, 10),
            (DemandDistribution.D5_10, 5, 10),
            (DemandDistribution.D1_100, 1, 100),
            (DemandDistribution.D50_100, 50, 100),
        ],
    )
    def test_fixed_ranges(
        self, generator: InstanceGenerator, dist: DemandDistribution, low: int, high: int
    ) -> None:
        """Test that fixed-range demands stay in their interval."""
        customers = [Point(x=i % 1000, y=i // 1000) for i in range(10_000)]

        demands, fraction = generator.gen_demands(
            _spec(demand_dist=dist), customers, derive_stream(3, "demands")
        )

        assert all(low <= demand <= high for demand in demands)
        assert fraction is None

    def test_quadrant_ranges(self, generator: InstanceGenerator) -> None:
        """Test that even quadrants get [1, 50] and odd quadrants [51, 100]."""
        customers = [
            Point(x=(37 * i) % 1001, y=(91 * i) % 1001) for i in range(10_000)
        ]

        demands, _ = generator.gen_demands(
            _spec(demand_dist=DemandDistribution.QUADRANT),
            customers,
            derive_stream(5, "demands"),
        )

        for point, demand in zip(customers, demands, strict=True):
            if quadrant(point) % 2 == 0:
                assert 1 <= demand <= 50
            else:
                assert 51 <= demand <= 100

    def test_small_large_mixture(self, generator: InstanceGenerator) -> None:
        """Test SL demands: two ranges and a small fraction in [0.70, 0.95]."""
        customers = [Point(x=i % 1000, y=i // 1000) for i in range(10_000)]

        demands, fraction = generator.gen_demands(
            _spec(demand_dist=DemandDistribution.SMALL_LARGE),
            customers,
            derive_stream(6, "demands"),
        )

        assert fraction is not None
        assert 0.70 <= fraction <= 0.95
        assert all(1 <= d <= 10 or 50 <= d <= 100 for d in demands)
        small_share = sum(d <= 10 for d in demands) / len(demands)
        assert abs(small_share - fraction) <= 0.03


class TestRouteSize:
    """Tests for the average route size draw."""

    @pytest.mark.parametrize("route_class", list(RouteClass))
    def test_draw_in_interval(
        self, generator: InstanceGenerator, route_class: RouteClass
    ) -> None:
        """Test that r lies in its class interval."""
        low, high = route_class.interval
        stream = derive_stream(8, "route_size")
        spec = _spec(route_class=route_class)

        assert all(low <= generator.draw_route_size(spec, stream) <= high for _ in range(200))


class TestGenerateInstance:
    """Tests for full instance generation."""

    def test_generated_instance_consistent(
        self, generator: InstanceGenerator, small_spec: GenSpec
    ) -> None:
        """Test name, size, capacity and trace of a generated instance."""
        generated = generator.generate_instance(small_spec)
        instance = generated.instance

        family, total, bound = parse_instance_name(instance.name)
        assert (family, total, bound) == ("XL", 60, instance.k_min)
        assert instance.n_customers == 59
        assert instance.capacity == compute_capacity(generated.trace.drawn_r, instance.demands)
        assert generated.trace.sum_demand == instance.total_demand
        assert generated.trace.n_cluster_seeds is not None
        assert generated.trace.n_clustered == 30
        assert generated.trace.small_fraction is not None
        assert generated.binpack.bins == instance.k_min
        assert "seed=7" in instance.comment

    def test_generation_is_deterministic(
        self, generator: InstanceGenerator, small_spec: GenSpec
    ) -> None:
        """Test that one spec always yields the same instance."""
        first = generator.generate_instance(small_spec)
        second = InstanceGenerator(generator.settings).generate_instance(small_spec)

        assert first.instance == second.instance
        assert first.trace == second.trace

    def test_seed_changes_instance(
        self, generator: InstanceGenerator, small_spec: GenSpec
    ) -> None:
        """Test that another seed yields different coordinates."""
        other = small_spec.model_copy(update={"master_seed": 8})

        first = generator.generate_instance(small_spec).instance
        second = generator.generate_instance(other).instance

        assert first.customers != second.customers

    def test_unitary_kmin_matches_formula(self, generator: InstanceGenerator) -> None:
        """Test that unit demands give k_min = ceil(n / Q)."""
        spec = _spec(demand_dist=DemandDistribution.UNITARY, route_class=RouteClass.VERY_SHORT)

        instance = generator.generate_instance(spec).instance

        assert instance.k_min == -(-100 // instance.capacity)
        assert instance.k_min_proven is True

    def test_sidecar_is_json_ready(
        self, generator: InstanceGenerator, small_spec: GenSpec
    ) -> None:
        """Test that the audit sidecar carries spec, trace and certificate."""
        sidecar = generator.generate_instance(small_spec).sidecar()

        assert set(sidecar) == {"name", "spec", "trace", "binpack"}
        assert sidecar["spec"]["demand_dist"] == "SL"
        assert sidecar["binpack"]["proven_optimal"] in (True, False)

    def test_get_instance_generator_cached(self) -> None:
        """Test that get_instance_generator returns a singleton."""
        assert get_instance_generator() is get_instance_generator()
