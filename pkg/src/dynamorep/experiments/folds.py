"""Stratified cross-validation folds over instance ids.

Folds partition instance ids into contiguous blocks, the same block for
every problem class, so each fold is stratified by construction: fold j
tests ids j*block+1 .. min((j+1)*block, N) with block = ceil(N / k).
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FoldPlan:
    instance_count: int
    k: int
    ranges: tuple  # per fold: (first_id, last_id), inclusive

    def test_ids(self, fold):
        first, last = self.ranges[fold]
        return tuple(range(first, last + 1))


def stratified_folds(instance_count, k=10):
    if instance_count < k:
        raise ValueError(
            f"cannot split {instance_count} instances into {k} folds"
        )
    block = math.ceil(instance_count / k)
    ranges = []
    for j in range(k):
        first = j * block + 1
        last = min((j + 1) * block, instance_count)
        if first > last:
            raise ValueError(
                f"fold {j} would be empty with N={instance_count}, k={k}"
            )
        ranges.append((first, last))
    if ranges[-1][1] != instance_count:
        raise ValueError("folds do not cover all instance ids")
    return FoldPlan(instance_count=instance_count, k=k, ranges=tuple(ranges))
