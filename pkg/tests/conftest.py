"""Shared fixtures: the two small worked instances used across the suite."""

import numpy as np
import pytest

from owa_elicit import Observation, Selection


@pytest.fixture
def small_selection_obs():
    """4-item select-3 instance with K=3 objectives and one observed choice."""
    C = np.array(
        [
            [1.0, 6.0, 8.0, 4.0],
            [6.0, 7.0, 8.0, 3.0],
            [9.0, 3.0, 2.0, 8.0],
        ]
    )
    fs = Selection(4, 3)
    chosen = np.array([1, 1, 1, 0])
    return Observation(C, chosen, fs)


@pytest.fixture
def two_obs_selection():
    """Two 4-item select-2 observations (K=3) whose explaining sets are disjoint."""
    fs = Selection(4, 2)
    C1 = np.array(
        [
            [0.6, 1.0, 0.5, 0.0],
            [1.0, 0.7, 0.0, 0.3],
            [0.0, 0.0, 0.8, 1.0],
        ]
    )
    C2 = np.array(
        [
            [0.8, 1.0, 0.3, 0.0],
            [0.8, 0.0, 1.0, 0.6],
            [0.8, 1.0, 0.1, 0.0],
        ]
    )
    obs1 = Observation(C1, np.array([0, 0, 1, 1]), fs)
    obs2 = Observation(C2, np.array([0, 1, 0, 1]), fs)
    return [obs1, obs2]
