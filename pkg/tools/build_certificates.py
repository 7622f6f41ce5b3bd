"""Regenerate the shipped certificate files.

Witnesses are authored here by hand; the checker never searches for them.
Run from the repository root: python tools/build_certificates.py
"""

import json
from pathlib import Path

from conversekit.groupring.algebra import GroupRingElem as G
from conversekit.groupring.certificates import Certificate, check_certificate
from conversekit.groupring.coeffs import Poly
from conversekit.groupring.relations import fricke, periodic, u_p
from conversekit.mat2 import ProjMat, eval_word, parse_word

OUT = Path(__file__).resolve().parents[1] / "src" / "conversekit" / "data" / "certificates"


def w(text):
    return G.of(eval_word(parse_word(text)))


def cert(name, level, claim, witness, source, scalars=None):
    meta = {"name": name, "level": level, "weight": None, "scalars": scalars or {}, "source": source}
    return Certificate(claim, witness, meta)


def build():
    one = G.scalar(1)
    lam = Poly.symbol("lam_H")
    out = [
        cert("zero", None, G(), [], "trivial: empty witness"),
        cert("periodic_1", None, one - w("P1"), [(periodic(1), one)], "base relation"),
        cert(
            "periodic_3_by_shift",
            None,
            one - w("P3"),
            [(periodic(1), one + w("P1") + w("P2"))],
            "telescoping 1 - P3 = (1 - P1)(1 + P1 + P2)",
        ),
    ]
    for N in (11, 18, 20, 24):
        Hinv = w(f"H{N}^-1")
        out.append(
            cert(
                f"fricke_W{N}",
                N,
                w(f"W{N}") - one,
                [
                    (fricke(N), (w("P-1") - one) * Hinv),
                    (periodic(-1), G.scalar(-lam) * Hinv),
                ],
                "W_N = H_N P_-1 H_N^-1 with right-ideal closure",
                {"lam_H": "declared Fricke scalar"},
            )
        )
    for N in (20, 24):
        X, H = w("P1/2"), w(f"H{N}")
        out.append(
            cert(
                f"L{N}_square",
                N,
                w(f"L{N}") - G.scalar(lam * lam),
                [
                    (u_p(2, N), H * X * H),
                    (fricke(N), -(X * H)),
                    (u_p(2, N), G.scalar(-lam) * H),
                    (fricke(N), G.scalar(lam)),
                ],
                "N L_N = (P_1/2 H_N)^2, U_2 = 1 + P_1/2 since 4 | N",
                {"lam_H": "declared Fricke scalar"},
            )
        )
    u3 = one + w("P1/3") + w("P-1/3")
    base = [(u_p(3, 18), one), (periodic(1), w("P-1/3"))]
    out.append(cert("n18_u3_sum", 18, u3, base, "U_3 vanishes since 9 | 18; P_2/3 = P_-1/3 P_1"))
    for tag, Y in (("J18", w("J18")), ("J18_P13_J18inv", w("J18 P1/3 J18^-1"))):
        out.append(
            cert(
                f"n18_u3_times_{tag}",
                18,
                u3 * Y,
                [(r, m * Y) for r, m in base],
                "right multiple of the U_3 chain",
            )
        )
    return out


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for c in build():
        res = check_certificate(c)
        assert res.valid, (c.name, res.diagnostic)
        (OUT / f"{c.name}.json").write_text(json.dumps(c.to_json(), indent=1) + "\n")
        print("wrote", c.name)
