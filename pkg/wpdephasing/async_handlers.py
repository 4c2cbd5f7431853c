#!/usr/bin/env python3
# This file is part of wp-dephasing, a simulator for controlled dephasing of
# an Aharonov-Bohm interferometer monitored by a which-path detector.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License version 3, as
# published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranties of
# MERCHANTABILITY, SATISFACTORY QUALITY, or FITNESS FOR A PARTICULAR
# PURPOSE.  See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.
"""Module that provides functions to assist asynchronous execution."""
import asyncio
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Coroutine, List, Sequence

import numpy as np


def run_async(coroutine: Coroutine):
    return asyncio.run(coroutine)


def chunk_bounds(size: int, chunks: int) -> List[slice]:
    """Split ``range(size)`` into at most ``chunks`` contiguous slices."""
    chunks = max(1, min(chunks, size))
    edges = np.linspace(0, size, chunks + 1).astype(int)
    return [slice(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def _fill_chunk(func: Callable, points: Sequence, out: np.ndarray, bounds: slice):
    for index in range(bounds.start, bounds.stop):
        out[index] = func(points[index])


async def _fill_slots_async(func: Callable, points: Sequence, out: np.ndarray, workers: int):
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        tasks = [
            loop.run_in_executor(executor, _fill_chunk, func, points, out, bounds)
            for bounds in chunk_bounds(len(points), workers)
        ]
        await asyncio.gather(*tasks)


def fill_slots(func: Callable, points: Sequence, dtype=float, workers: int = 1) -> np.ndarray:
    """Evaluate ``func`` on every point, writing each result into its own slot.

    Every point is computed by the same scalar code path whatever the worker
    count, so the output is bitwise identical for any schedule.
    """
    out = np.empty(len(points), dtype=dtype)
    if workers <= 1 or len(points) < 2:
        _fill_chunk(func, points, out, slice(0, len(points)))
        return out
    run_async(_fill_slots_async(func, points, out, workers))
    return out
