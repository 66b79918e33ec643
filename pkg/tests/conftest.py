import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cvseg.imaging import synth_disk


@pytest.fixture(scope="session")
def disk_fixture():
    """128x128 two-level disk (fg=1, bg=0, r=30) and its ground-truth mask."""
    img, mask = synth_disk(128, 128, (63.5, 63.5), 30.0, 1.0, 0.0)
    return img, mask


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
