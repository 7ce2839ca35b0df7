"""Print the cyclic and completed complexes of the trivial knot for
n = 2..5: bases by degree, the doubling arrows for even n, and the exact
homology ranks."""

from chordhom.complexes import build_cyclic_complex, build_ho_complex
from chordhom.documents import dga_from_document
from chordhom.examples import example_document
from chordhom.homology import betti

NAMES = {2: "unknot_n2", 3: "unknot", 4: "unknot_n4", 5: "unknot_n5"}


def label_str(label) -> str:
    kind = label[0]
    if kind == "tau":
        return f"tau_{label[1]}"
    word = ".".join(label[1])
    return {"cyc": f"({word})", "chk": f"{word}ˇ", "hat": f"{word}ˆ"}[kind]


def main() -> None:
    for n, name in NAMES.items():
        dga = dga_from_document(example_document(name))
        print(f"=== n = {n} ===")
        cyc = build_cyclic_complex(dga, (0, 12), 13)
        print("cyclic complex (degree: generators):")
        for d in range(0, 13):
            if cyc.labels(d):
                print(f"  {d:>3}: {', '.join(label_str(l) for l in cyc.labels(d))}")
        ho = build_ho_complex(dga, (0, 12), 13)
        print("completed complex with arrows:")
        for d in range(0, 13):
            labs = ho.labels(d)
            if not labs:
                continue
            arrows = []
            for col, lab in enumerate(labs):
                for (r, c), v in ho.matrix(d).items():
                    if c == col:
                        arrows.append(
                            f"{label_str(lab)} -> {v}*{label_str(ho.labels(d - 1)[r])}"
                        )
            line = ", ".join(label_str(l) for l in labs)
            print(f"  {d:>3}: {line}" + (f"   [{'; '.join(arrows)}]" if arrows else ""))
        table = betti(ho)
        ranks = {d: table.rank(d) for d in range(0, 13) if table.rank(d)}
        print(f"homology ranks: {ranks}")
        print()


if __name__ == "__main__":
    main()
