"""Regenerate the builtin corpus under src/fuscat/corpus.

Rep rings and functor matrices come from the character tables; rerun after
changing element numbering or character ordering and review the diff.
"""
import itertools
from pathlib import Path

from fuscat import io
from fuscat.characters import character_table, inflation_functor, rep_fusion_ring, restriction_functor
from fuscat.cohomology import cyclic_representative, zero_cocycle
from fuscat.equivariantization import GroupAction, conjugation_action, trivial_action
from fuscat.fusion_ring import FusionRing, fibonacci_ring, trivial_ring
from fuscat.groups import (alternating_group, cyclic_group, dihedral_group, extension_from_normal,
                           generated_subgroup, normal_subgroups, quaternion_group, symmetric_group)
from fuscat.pointed import group_ring

OUT = Path(__file__).resolve().parent.parent / "src" / "fuscat" / "corpus"


def write(name, docs):
    text = io.dumps_pretty({"kind": "workspace", "entities": docs})
    (OUT / f"{name}.json").write_text(text + "\n")


def normal_of_order(g, k):
    return next(n for n in normal_subgroups(g) if len(n) == k)


def subgroup_of_order(g, k):
    for gens in itertools.combinations(range(1, g.order), 2):
        h = generated_subgroup(g, gens)
        if len(h) == k:
            return h
    raise LookupError(k)


def cyclic_subgroup_of_order(g, k):
    x = next(x for x in range(g.order) if g.element_orders()[x] == k)
    return generated_subgroup(g, [x])


def pipeline(big, normal, names):
    """Rings and functors for rep(G/N) -> rep G -> rep N."""
    gname, nname, qname = names
    ext = extension_from_normal(big, normal)
    tg = character_table(big)
    infl = inflation_functor(character_table(ext.quotient), ext.projection)
    res = restriction_functor(tg, normal)
    return [
        io.group_document(big, gname),
        io.group_document(ext.kernel, nname),
        io.group_document(ext.quotient, qname),
        io.sequence_document(ext, nname, gname, qname, f"seq_{nname}_{gname}"),
        io.ring_document(rep_fusion_ring(tg), f"rep{gname}"),
        io.ring_document(res.target, f"rep{nname}"),
        io.ring_document(infl.source, f"rep{qname}"),
        io.functor_document(infl, f"rep{qname}", f"rep{gname}", f"infl_{qname}_{gname}"),
        io.functor_document(res, f"rep{gname}", f"rep{nname}", f"res_{gname}_{nname}"),
    ]


def restriction_docs(big, sub, gname, hname):
    res = restriction_functor(character_table(big), sub)
    return [io.ring_document(res.source, f"rep{gname}"), io.ring_document(res.target, f"rep{hname}"),
            io.functor_document(res, f"rep{gname}", f"rep{hname}", f"res_{gname}_{hname}")]


def main():
    OUT.mkdir(exist_ok=True)
    s3, a4, s4 = symmetric_group(3), alternating_group(4), symmetric_group(4)

    docs = pipeline(s3, normal_of_order(s3, 3), ("S3", "Z3", "Z2"))
    res2 = restriction_functor(character_table(s3), cyclic_subgroup_of_order(s3, 2))
    docs.append(io.functor_document(res2, "repS3", "repZ2", "res_S3_Z2"))
    write("s3_pipeline", docs)
    write("z4_pipeline", pipeline(cyclic_group(4), (0, 2), ("Z4", "Z2", "Z2q")))
    write("a4_pipeline", pipeline(a4, normal_of_order(a4, 4), ("A4", "V4", "Z3")))

    d4 = dihedral_group(4)
    write("d4_index2", restriction_docs(d4, cyclic_subgroup_of_order(d4, 4), "D4", "Z4"))

    zoo, seen = [], set()
    cases = [
        (s4, normal_of_order(s4, 12), "S4", "A4"),
        (quaternion_group(), cyclic_subgroup_of_order(quaternion_group(), 4), "Q8", "Z4"),
        (alternating_group(5), subgroup_of_order(alternating_group(5), 12), "A5", "A4"),
        (dihedral_group(5), normal_of_order(dihedral_group(5), 5), "D5", "Z5"),
        (a4, cyclic_subgroup_of_order(a4, 3), "A4", "Z3"),
        (d4, normal_of_order(d4, 2), "D4", "Z2"),
        (s3, (0,), "S3", "Z1"),
    ]
    for big, sub, gname, hname in cases:
        for doc in restriction_docs(big, sub, gname, hname):
            if doc["id"] not in seen:
                seen.add(doc["id"])
                zoo.append(doc)
    write("functor_zoo", zoo)

    write("fibonacci", [io.ring_document(fibonacci_ring(), "fib")])
    # t * t = t: no unit summand, so rigidity fails
    broken = FusionRing(["1", "t"], 0, [0, 1], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)])
    write("broken_ring", [io.ring_document(broken, "broken")])

    z4, z5 = cyclic_group(4), cyclic_group(5)
    write("pointed_examples", [
        io.group_document(z4, "Z4"), io.group_document(z5, "Z5"), io.group_document(s3, "S3"),
        io.cocycle_document(cyclic_representative(4, 1), "Z4", "omega1_Z4"),
        io.cocycle_document(zero_cocycle(z5, 5), "Z5", "zero_Z5"),
        io.cocycle_document(zero_cocycle(s3, 6), "S3", "zero_S3"),
        io.pointed_document("Z4", "omega1_Z4", "C_Z4_omega1"),
        io.pointed_document("Z5", "zero_Z5", "C_Z5"),
        io.pointed_document("S3", "zero_S3", "C_S3"),
    ])

    ext = extension_from_normal(s3, normal_of_order(s3, 3))
    write("s3_z2_sequence", [
        io.group_document(ext.kernel, "Z3"), io.group_document(s3, "S3"), io.group_document(ext.quotient, "Z2"),
        io.sequence_document(ext, "Z3", "S3", "Z2", "seq_Z3_S3_Z2"),
    ])
    write("omega1_z2", [io.cocycle_document(cyclic_representative(2, 1), io.group_document(cyclic_group(2)),
                                            "omega1_Z2")])

    z2, z3 = cyclic_group(2), cyclic_group(3)
    actions = [
        io.group_document(z2, "Z2"), io.group_document(z3, "Z3"),
        io.ring_document(trivial_ring(), "vec"), io.ring_document(group_ring(z3), "kZ3"),
        io.ring_document(fibonacci_ring(), "fib"),
        io.action_document(trivial_action(z2, trivial_ring()), "Z2", "vec", "Z2_on_vec"),
        io.action_document(GroupAction(z2, group_ring(z3), [[0, 1, 2], [0, 2, 1]]), "Z2", "kZ3",
                           "Z2_inversion_Z3"),
        io.action_document(trivial_action(z3, fibonacci_ring()), "Z3", "fib", "Z3_on_fib"),
    ]
    for big, k, name in ((s3, 3, "S3"), (a4, 4, "A4"), (s4, 4, "S4")):
        act = conjugation_action(extension_from_normal(big, normal_of_order(big, k)))
        actions.append(io.action_document(act, io.group_document(act.group), io.ring_document(act.ring),
                                          f"conj_{name}"))
    write("actions", actions)


if __name__ == "__main__":
    main()
