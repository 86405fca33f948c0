import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("repro")

SAMPLE = (
    b"The harbour wakes before the town does. First the gulls, which have "
    b"no patience for sleep, and then the slow knocking of hulls against "
    b"the pier as the tide turns over in its bed. A man in a yellow coat "
    b"walks the length of the sea wall with a flask of tea, checking the "
    b"ropes that his father checked before him, and his father before that. "
    b"The boats are older than most of the houses and newer than the "
    b"harbour itself, which has held this shape since anyone thought to "
    b"draw it. By seven the fish market is loud with numbers."
)


@pytest.fixture(scope="session")
def english_text():
    return SAMPLE
