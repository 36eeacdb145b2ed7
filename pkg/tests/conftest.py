"""Shared fixtures: small Cayley balls and one disk embedding, built once.

Everything here is deterministic, so session scope is safe; the fixtures
exist purely to keep repeated BFS work out of individual tests.
"""

import pytest

from cactuskit import affine, cactus, ball, embed_ball


@pytest.fixture(scope="session")
def aj3_r2():
    return ball(affine(3), 2)


@pytest.fixture(scope="session")
def aj3_r3():
    return ball(affine(3), 3)


@pytest.fixture(scope="session")
def aj3_r4():
    return ball(affine(3), 4)


@pytest.fixture(scope="session")
def j4_r3():
    return ball(cactus(4), 3)


@pytest.fixture(scope="session")
def aj4_r3():
    return ball(affine(4), 3)


@pytest.fixture(scope="session")
def disk_r3(aj3_r3):
    return embed_ball(aj3_r3)


@pytest.fixture(scope="session")
def disk_r4(aj3_r4):
    return embed_ball(aj3_r4)
