import pytest

from tiltrig.acceptance import CE3_BLOCK, SL2_BLOCK
from tiltrig.highest_weight import StandardSystem
from tiltrig.quiver import parse_alg_text


@pytest.fixture(scope="session")
def sl2():
    return StandardSystem(parse_alg_text(SL2_BLOCK, name="sl2block"))


@pytest.fixture(scope="session")
def sl2_f2():
    return StandardSystem(parse_alg_text(SL2_BLOCK.replace("field 0", "field 2"), name="sl2block-f2"))


@pytest.fixture(scope="session")
def ce3():
    return StandardSystem(parse_alg_text(CE3_BLOCK, name="ce3"))
