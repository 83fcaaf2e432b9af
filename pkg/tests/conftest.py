import itertools

import numpy as np
import pytest

from schemefusion import generators as gen
from schemefusion.exact import RatMatrix
from schemefusion.scheme import spectrum, validate_table


def naive_intersection_numbers(cells):
    """Triple counts by direct enumeration; None if some count is not constant."""
    cells = np.asarray(cells)
    v = len(cells)
    d = int(cells.max())
    p = {}
    for x, y in itertools.product(range(v), repeat=2):
        h = cells[x, y]
        counts = np.zeros((d + 1, d + 1), dtype=int)
        for z in range(v):
            counts[cells[x, z], cells[z, y]] += 1
        if h in p:
            if not np.array_equal(p[h], counts):
                return None
        else:
            p[h] = counts
    return p


def rows_sorted(M: RatMatrix):
    rows = M.rows()
    return (rows[0],) + tuple(sorted(rows[1:]))


@pytest.fixture(scope="session")
def grid():
    return gen.latin_scheme(3, 2)


@pytest.fixture(scope="session")
def grid_spec(grid):
    return spectrum(validate_table(grid))


@pytest.fixture(scope="session")
def chain222():
    return gen.wreath_chain(2, 2, 2)


@pytest.fixture(scope="session")
def chain222_spec(chain222):
    return spectrum(validate_table(chain222))


@pytest.fixture(scope="session")
def clique_vertex_spec():
    return spectrum(validate_table(gen.wreath(2, gen.latin_scheme(3, 2))))


@pytest.fixture(scope="session")
def johnson7_spec():
    return spectrum(validate_table(gen.johnson3(7)))
