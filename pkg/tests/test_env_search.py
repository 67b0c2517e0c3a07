import json

import pytest

from qaoa_bounds.atlas import Atlas
from qaoa_bounds.bounds import ClassValues
from qaoa_bounds.env_search import (MODIFIED, UNDECIDED, UNMODIFIED, ClassResult, census_from_results, edge_status,
                                    merge_checkpoints, parse_shard, read_checkpoint,
                                    search_class, search_environments)
from qaoa_bounds.graph import Graph
from qaoa_bounds.hierarchy import enumerate_environments, make_gadget
from qaoa_bounds.qaoa import fixed_angles

SMALL = [0, 1, 2, 4, 8, 10, 11]


def test_lazy_search_reproduces_p1_census(atlas1):
    census = enumerate_environments(1)
    lazy = search_environments(atlas=atlas1)
    assert sorted(e.key for e in lazy.records) == sorted(r.key for r in census.records)
    assert lazy.per_class == census.per_class


def test_edge_status():
    # triangle through the center: the edge (0, 2) sees the cycle 0-1-2
    g = Graph(4, ((0, 1), (0, 2), (1, 2), (2, 3)))
    assert edge_status(g, (0, 2), 1)[0] == MODIFIED
    # vertex 1 is closed and not adjacent to 2, so no later edge can close a
    # cycle through the center inside the view of (0, 2)
    t = Graph(5, ((0, 1), (0, 2), (1, 3), (1, 4)))
    assert edge_status(t, (0, 2), 1)[0] == UNMODIFIED
    # both sides open and the view unfinished
    u = Graph(4, ((0, 1), (0, 2), (1, 3)))
    assert edge_status(u, (0, 2), 2)[0] == UNDECIDED


def test_search_class_small(atlas2):
    values = ClassValues(atlas2, fixed_angles(2))
    res = search_class(0, atlas2, values, make_gadget(2))
    assert len(res.environments) == 1 and res.environments[0].modified == 0
    # class 1 only occurs in a closed host; kept in the record, filtered by policy
    closed = search_class(1, atlas2, values, make_gadget(2))
    assert [e.closed for e in closed.environments] == [True]
    assert census_from_results(2, [closed]).relevant_count == 1
    dropped = census_from_results(2, [closed], include_closed=False)
    assert dropped.relevant_count == 0 and dropped.closed_excluded == 1


def test_checkpoint_resume_and_shards(tmp_path, atlas2):
    full = search_environments(atlas=atlas2, classes=SMALL)
    ck = tmp_path / "envs.jsonl"
    first = search_environments(atlas=atlas2, classes=SMALL[:3], checkpoint=ck)
    assert len(read_checkpoint(ck)) == 3
    # a torn trailing line is dropped on resume
    with open(ck, "a") as fh:
        fh.write('{"class": 4, "sta')
    seen = []
    resumed = search_environments(atlas=atlas2, classes=SMALL, checkpoint=ck, resume=True,
                                  progress=lambda r: seen.append(r.center_class))
    assert seen == SMALL[3:]
    assert resumed.per_class == full.per_class
    assert sorted(e.key for e in resumed.records) == sorted(e.key for e in full.records)
    shards = []
    for i in range(3):
        path = tmp_path / f"s{i}.jsonl"
        search_environments(atlas=atlas2, classes=SMALL, shard=(i, 3), checkpoint=path)
        shards.append(path)
    assert merge_checkpoints(shards).per_class == full.per_class
    assert first.relevant_count <= full.relevant_count


def test_checkpoint_rejects_other_angles(tmp_path, atlas2):
    ck = tmp_path / "envs.jsonl"
    search_environments(atlas=atlas2, classes=[0], checkpoint=ck)
    with pytest.raises(ValueError, match="angles"):
        read_checkpoint(ck, 2, fixed_angles(2).reduced().__class__.from_degrees([1, 2, 3, 4]))


def test_parallel_matches_serial(atlas2):
    a = search_environments(atlas=atlas2, classes=SMALL, threads=1)
    b = search_environments(atlas=atlas2, classes=SMALL, threads=2)
    assert [e.key for e in a.records] == [e.key for e in b.records]


def test_parse_shard():
    assert parse_shard("1/4") == (1, 4)
    for bad in ("4/4", "x", "1/0", "-1/3"):
        with pytest.raises(ValueError):
            parse_shard(bad)


def test_result_record_roundtrip(atlas2):
    values = ClassValues(atlas2, fixed_angles(2))
    res = search_class(4, atlas2, values, make_gadget(2))
    back = ClassResult.from_record(json.loads(json.dumps(res.to_record())))
    assert back.environments == res.environments


@pytest.mark.parametrize("k", [42, 44])
def test_pruning_keeps_every_environment(atlas2, k):
    # classes where skipping joins to far vertices cuts the state count
    values = ClassValues(atlas2, fixed_angles(2))
    gadget = make_gadget(2)
    pruned = search_class(k, atlas2, values, gadget)
    full = search_class(k, atlas2, values, gadget, prune=False)
    assert pruned.states < full.states
    assert [(e.key, e.closed) for e in pruned.environments] == [(e.key, e.closed) for e in full.environments]
