import random
import sys
from pathlib import Path
from typing import Dict, List, Tuple

import pytest
from faker import Faker

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kempe_recon.data_sources import load_toy_instance  # noqa: E402
from kempe_recon.graphs import Coloring, Graph, build_graph, degeneracy  # noqa: E402
from kempe_recon.reduction import fixed_set, reduce_instance  # noqa: E402

U, V, W = 0, 1, 2


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size property suites, deselect with -m \"not slow\"")


@pytest.fixture
def k2() -> Graph:
    return build_graph(2, [(0, 1)])


@pytest.fixture
def path_uvw() -> Graph:
    return build_graph(3, [(U, V), (V, W)])


@pytest.fixture(scope="session")
def toy_instance():
    return load_toy_instance()


@pytest.fixture(scope="session")
def toy_reduced(toy_instance):
    return reduce_instance(toy_instance)


@pytest.fixture(scope="session")
def toy_fixed(toy_reduced):
    return fixed_set(toy_reduced)


def random_graph(rng: random.Random, n: int, density: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return build_graph(n, edges)


def random_proper_coloring(rng: random.Random, graph: Graph, k: int) -> Coloring:
    """Random colors along a degeneracy witness; needs k > degeneracy."""
    _, ordering = degeneracy(graph)
    colors = [0] * graph.vertex_count
    for v in ordering:
        taken = {colors[w] for w in graph.neighbors(v)}
        colors[v] = rng.choice([c for c in range(1, k + 1) if c not in taken])
    return Coloring(tuple(colors), k)


def markdown_rows(text: str) -> List[List[str]]:
    """Stripped cells of every markdown table row, header included, separator rule skipped."""
    rows = []
    for line in text.splitlines():
        if not line.startswith("|"):
            continue
        cells = [cell.strip() for cell in line.strip().strip("|").split("|")]
        if all(set(cell) <= set(":-") for cell in cells):
            continue
        rows.append(cells)
    return rows


def random_lists(rng: random.Random, n: int, p: int) -> List[frozenset]:
    return [frozenset(rng.sample(range(1, p + 1), rng.randint(1, p))) for _ in range(n)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


@pytest.fixture
def fake() -> Faker:
    Faker.seed(4321)
    return Faker()


def synthetic_ctt(fake: Faker, rng: random.Random, course_count: int = 6, days: int = 3,
                  periods: int = 2) -> Tuple[str, Dict[str, dict]]:
    """A random curriculum-based instance together with the course data it was built from."""
    teachers = [fake.unique.lexify(text="T?????") for _ in range(max(1, course_count // 2))]
    courses = {}
    for _ in range(course_count):
        name = fake.unique.lexify(text="C??????")
        courses[name] = {"teacher": rng.choice(teachers), "lectures": rng.randint(1, 3), "unavailable": set()}
    names = list(courses)
    curricula = [rng.sample(names, rng.randint(1, min(3, len(names)))) for _ in range(2)]
    for name in names:
        for _ in range(rng.randint(0, 2)):
            courses[name]["unavailable"].add((rng.randrange(days), rng.randrange(periods)))

    constraints = sorted((name, d, p) for name in names for d, p in courses[name]["unavailable"])
    lines = [
        f"Name: {fake.unique.lexify(text='inst????')}",
        f"Courses: {course_count}",
        "Rooms: 1",
        f"Days: {days}",
        f"Periods_per_day: {periods}",
        f"Curricula: {len(curricula)}",
        f"Constraints: {len(constraints)}",
        "",
        "COURSES:",
    ]
    lines += [f"{name} {c['teacher']} {c['lectures']} 1 10" for name, c in courses.items()]
    lines += ["", "ROOMS:", "R1 100", "", "CURRICULA:"]
    lines += [f"Q{i} {len(members)} {' '.join(members)}" for i, members in enumerate(curricula)]
    lines += ["", "UNAVAILABILITY_CONSTRAINTS:"]
    lines += [f"{name} {d} {p}" for name, d, p in constraints]
    lines += ["", "END."]
    for name in names:
        courses[name]["curricula"] = {i for i, members in enumerate(curricula) if name in members}
    return "\n".join(lines) + "\n", courses
