"""Images of a few pairs over small finite fields, and how they grow with q.

    python3 demos/finite_images.py
"""

from etaleopen import artin_schreier_pair, enumerate_finite, make_ext_field, parse_pair, power_pair
from etaleopen.experiments import density_sweep, zariski_cofinality_trend


def show(label, pair, F):
    img = enumerate_finite(pair, F)
    print(f"{label:<28} over {F.spec:<8} size {len(img):>3} / {F.q}")


if __name__ == "__main__":
    for q in ((7, 1), (3, 2), (5, 2)):
        F = make_ext_field(*q)
        show("nonzero squares", power_pair(2), F)
        show("nonzero cubes", power_pair(3), F)
    for m in (1, 2, 3):
        show("Artin-Schreier", artin_schreier_pair(3), make_ext_field(3, m))

    # a curve-like pair: the image is everything but a few points
    pair = parse_pair("pair{n=1; f=y^2 - x1^3 - 1; g=y}")
    print()
    for row in density_sweep(pair, [101, 103, 121, 125]):
        print(f"q={row.q:<4} image {row.image_size:<4} share {float(row.share):.3f} eps {row.epsilon}  pass={row.passed}")

    print()
    rep = zariski_cofinality_trend(parse_pair("pair{n=1; f=y^3 - x1; g=y}"), 7, [1, 2, 3])
    for r in rep.rows:
        print(f"F_7^{r.m}: complement of the cube image has {r.complement} points")
