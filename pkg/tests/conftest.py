import pytest

from tensorcat.catalog import make_algebra, standard_entries
from tensorcat.algebra import internal_end
from tensorcat.fincat import Obj


@pytest.fixture(scope="session")
def cats():
    return {name: mk() for name, mk in standard_entries().items()}


def corpus_algebras(cats):
    """The (name, category, algebra) corpus used by the acceptance suite."""
    out = []

    def add(name, cat, alg):
        out.append((name, cat, alg))

    vq, vf2, vf3 = cats["vec_q"], cats["vec_f2"], cats["vec_f3"]
    add("vec_q/trivial", vq, make_algebra(vq, "trivial"))
    add("vec_q/m2", vq, internal_end(vq, Obj(vq, {"1": 2})))
    add("vec_q/group2", vq, make_algebra(vq, "ordinary_group_algebra", {"n": 2}))
    add("vec_f2/group2", vf2,
        make_algebra(vf2, "ordinary_group_algebra", {"n": 2}))
    add("vec_f2/group3", vf2,
        make_algebra(vf2, "ordinary_group_algebra", {"n": 3}))
    add("vec_f3/group3", vf3,
        make_algebra(vf3, "ordinary_group_algebra", {"n": 3}))
    z2 = cats["z2"]
    add("z2/regular", z2, make_algebra(z2, "regular_pointed", {}))
    add("z2/trivial", z2, make_algebra(z2, "trivial"))
    z2t = cats["z2_twisted"]
    add("z2_twisted/trivial", z2t, make_algebra(z2t, "trivial"))
    add("z2_twisted/end_g1", z2t,
        make_algebra(z2t, "internal_end", {"obj": {"g1": 1}}))
    z3 = cats["z3"]
    add("z3/regular", z3, make_algebra(z3, "regular_pointed", {}))
    z4 = cats["z4"]
    add("z4/regular", z4, make_algebra(z4, "regular_pointed", {}))
    add("z4/sub2", z4,
        make_algebra(z4, "regular_pointed", {"subgroup_order": 2}))
    zf2 = cats["z2_f2"]
    add("z2_f2/regular", zf2, make_algebra(zf2, "regular_pointed", {}))
    zf3 = cats["z3_f3"]
    add("z3_f3/regular", zf3, make_algebra(zf3, "regular_pointed", {}))
    fib = cats["fibonacci"]
    add("fibonacci/end_t", fib,
        make_algebra(fib, "internal_end", {"obj": {"t": 1}}))
    add("fibonacci/trivial", fib, make_algebra(fib, "trivial"))
    isg = cats["ising"]
    add("ising/end_sig", isg,
        make_algebra(isg, "internal_end", {"obj": {"sig": 1}}))
    mmf = cats["mmf2"]
    add("mmf2/trivial", mmf, make_algebra(mmf, "trivial"))
    add("mmf2/end_e12", mmf,
        make_algebra(mmf, "internal_end", {"obj": {"e12": 1}}))
    return out


@pytest.fixture(scope="session")
def corpus(cats):
    return corpus_algebras(cats)


@pytest.fixture(scope="session")
def corpus_reports(corpus):
    """One full analysis per corpus pair, computed once per session."""
    from tensorcat.structure import analyze
    return [(name, cat, alg, analyze(cat, alg))
            for name, cat, alg in corpus]
