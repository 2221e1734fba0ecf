"""Demo corpus: classic school-geometry entries ready to seed a repository.

Twenty-five constructions and conjectures (triangles, circles, midpoints,
perpendicular bisectors and friends) with names, descriptions and keywords
suitable for exercising both text and geometric search.  Seeding uses
forced inserts because classic figures legitimately contain one another,
which the duplicate gate would otherwise flag.

Run ``python -m geokb.corpus DATA_DIR`` to materialize the corpus into a
data directory that ``geoserver --data DATA_DIR`` can serve.
"""

from __future__ import annotations

from textwrap import dedent

from .repository import ProblemEntry, Repository


def _entry(
    identifier: str,
    name: str,
    code: str,
    *,
    description: str,
    short_description: str,
    keywords: tuple[str, ...],
    level: int = 3,
    kind: str = "conjecture",
    language: str = "en",
) -> ProblemEntry:
    return ProblemEntry(
        identifier=identifier,
        name=name,
        description=description,
        short_description=short_description,
        keywords=keywords,
        code=dedent(code).strip() + "\n",
        language=language,
        level=level,
        kind=kind,
    )


ENTRIES: tuple[ProblemEntry, ...] = (
    _entry(
        "GEO_CEVA",
        "Ceva's Theorem",
        """
        point A
        point B
        point C
        point D
        point E
        point F
        point G
        line a
        line b
        line c
        line p
        line q
        line r
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        incident(D, a)
        incident(E, b)
        incident(F, c)
        line_through(p, A, D)
        line_through(q, B, E)
        line_through(r, C, F)
        concurrent(p, q, r)
        incident(G, p)
        incident(G, q)
        incident(G, r)
        """,
        description=(
            "Three cevians AD, BE and CF of a triangle ABC are concurrent "
            "exactly when the product of the ratios in which they divide "
            "the opposite sides equals one. The construction shows the "
            "three cevians meeting at G."
        ),
        short_description="Concurrent cevians of a triangle.",
        keywords=("triangle", "cevian", "concurrent", "ratio"),
        level=4,
    ),
    _entry(
        "GEO0281",
        "Incircle of a Triangle",
        """
        point A
        point B
        point C
        point I
        point X
        point Y
        point Z
        line a
        line b
        line c
        circle k
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        circle_centered(k, I, X)
        on_circle(Y, k)
        on_circle(Z, k)
        incident(X, a)
        incident(Y, b)
        incident(Z, c)
        """,
        description=(
            "The inscribed circle of triangle ABC touches each side from "
            "the inside; its center I is equidistant from the three touch "
            "points X, Y and Z."
        ),
        short_description="Circle inscribed in a triangle.",
        keywords=("triangle", "incircle", "inscribed circle", "tangent"),
    ),
    _entry(
        "GEO0328",
        "Circumcircle of a Triangle",
        """
        point A
        point B
        point C
        point O
        line a
        line b
        line c
        circle k
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        circle_centered(k, O, A)
        on_circle(B, k)
        on_circle(C, k)
        """,
        description=(
            "The circumscribed circle of triangle ABC passes through all "
            "three vertices; its center O is equidistant from A, B and C."
        ),
        short_description="Circle through the vertices of a triangle.",
        keywords=("triangle", "circumcircle", "circumscribed circle"),
    ),
    _entry(
        "GEO0001",
        "Centroid of a Triangle",
        """
        point A
        point B
        point C
        point Ma
        point Mb
        point Mc
        point G
        line a
        line b
        line c
        line p
        line q
        line r
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        midpoint(Ma, B, C)
        midpoint(Mb, A, C)
        midpoint(Mc, A, B)
        line_through(p, A, Ma)
        line_through(q, B, Mb)
        line_through(r, C, Mc)
        concurrent(p, q, r)
        incident(G, p)
        incident(G, q)
        incident(G, r)
        """,
        description=(
            "The three medians of a triangle, each joining a vertex to the "
            "midpoint of the opposite side, meet in a single point G, the "
            "centroid."
        ),
        short_description="Medians of a triangle are concurrent.",
        keywords=("triangle", "median", "centroid", "concurrent"),
    ),
    _entry(
        "GEO0002",
        "Triangle Midsegment",
        """
        point A
        point B
        point C
        point M
        point N
        line a
        line b
        line c
        line m
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        midpoint(M, A, B)
        midpoint(N, A, C)
        line_through(m, M, N)
        parallel(a, m)
        """,
        description=(
            "The segment joining the midpoints of two sides of a triangle "
            "is parallel to the third side and half as long. A standard "
            "midpoint theorem of school geometry."
        ),
        short_description="Midsegment parallel to the base.",
        keywords=("triangle", "midpoint", "midsegment", "parallel"),
        level=2,
    ),
    _entry(
        "GEO0003",
        "Thales' Theorem",
        """
        point A
        point B
        point C
        point O
        line d
        line u
        line v
        circle k
        midpoint(O, A, B)
        circle_centered(k, O, A)
        on_circle(B, k)
        on_circle(C, k)
        line_through(d, A, B)
        line_through(u, A, C)
        line_through(v, B, C)
        perpendicular(u, v)
        incident(O, d)
        """,
        description=(
            "An angle inscribed in a semicircle is a right angle: if AB is "
            "a diameter of a circle and C another point on it, then the "
            "lines CA and CB are perpendicular."
        ),
        short_description="Right angle in a semicircle.",
        keywords=("circle", "diameter", "right angle", "semicircle"),
    ),
    _entry(
        "GEO0004",
        "Perpendicular Bisectors of a Triangle",
        """
        point A
        point B
        point C
        point Ma
        point Mb
        point Mc
        point O
        line a
        line b
        line c
        line p
        line q
        line r
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        midpoint(Ma, B, C)
        midpoint(Mb, A, C)
        midpoint(Mc, A, B)
        incident(Ma, p)
        perpendicular(a, p)
        incident(Mb, q)
        perpendicular(b, q)
        incident(Mc, r)
        perpendicular(c, r)
        concurrent(p, q, r)
        incident(O, p)
        incident(O, q)
        incident(O, r)
        equidistant(O, A, O, B)
        equidistant(O, A, O, C)
        """,
        description=(
            "The perpendicular bisectors of the three sides of a triangle "
            "are concurrent in the circumcenter O, the point equidistant "
            "from all three vertices."
        ),
        short_description="Side bisectors meet in the circumcenter.",
        keywords=("triangle", "perpendicular bisector", "circumcenter", "concurrent"),
    ),
    _entry(
        "GEO0005",
        "Orthocenter of a Triangle",
        """
        point A
        point B
        point C
        point Ha
        point Hb
        point Hc
        point H
        line a
        line b
        line c
        line p
        line q
        line r
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        incident(Ha, a)
        line_through(p, A, Ha)
        perpendicular(a, p)
        incident(Hb, b)
        line_through(q, B, Hb)
        perpendicular(b, q)
        incident(Hc, c)
        line_through(r, C, Hc)
        perpendicular(c, r)
        concurrent(p, q, r)
        incident(H, p)
        incident(H, q)
        incident(H, r)
        """,
        description=(
            "The three altitudes of a triangle, dropped from each vertex "
            "perpendicularly onto the opposite side, meet in a single "
            "point H, the orthocenter."
        ),
        short_description="Altitudes of a triangle are concurrent.",
        keywords=("triangle", "altitude", "orthocenter", "concurrent", "perpendicular"),
    ),
    _entry(
        "GEO0006",
        "Euler Line",
        """
        point A
        point B
        point C
        point G
        point O
        point H
        line a
        line b
        line c
        line e
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        line_through(e, G, H)
        incident(O, e)
        """,
        description=(
            "In any non-equilateral triangle the centroid G, the "
            "circumcenter O and the orthocenter H lie on one line, the "
            "Euler line e."
        ),
        short_description="Centroid, circumcenter and orthocenter are collinear.",
        keywords=("triangle", "euler line", "centroid", "circumcenter", "orthocenter"),
        level=4,
    ),
    _entry(
        "GEO0007",
        "Isosceles Triangle",
        """
        point A
        point B
        point C
        line a
        line b
        line c
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        equidistant(A, B, A, C)
        """,
        description=(
            "A triangle with two legs of equal length: the distance from A "
            "to B equals the distance from A to C. Its base angles are "
            "equal."
        ),
        short_description="Triangle with two equal sides.",
        keywords=("triangle", "isosceles", "equal sides"),
        level=1,
        kind="construction",
    ),
    _entry(
        "GEO0008",
        "Equilateral Triangle",
        """
        point A
        point B
        point C
        line a
        line b
        line c
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        equidistant(A, B, A, C)
        equidistant(A, B, B, C)
        """,
        description=(
            "A triangle with all three sides of equal length and all "
            "angles equal to sixty degrees."
        ),
        short_description="Triangle with three equal sides.",
        keywords=("triangle", "equilateral", "equal sides"),
        level=1,
        kind="construction",
    ),
    _entry(
        "GEO0009",
        "Right Triangle",
        """
        point A
        point B
        point C
        line a
        line b
        line c
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        perpendicular(b, c)
        """,
        description=(
            "A triangle with a right angle at A: the legs AB and AC are "
            "perpendicular and BC is the hypotenuse."
        ),
        short_description="Triangle with a right angle.",
        keywords=("triangle", "right angle", "perpendicular", "hypotenuse"),
        level=1,
        kind="construction",
    ),
    _entry(
        "GEO0010",
        "Parallelogram and Its Diagonals",
        """
        point A
        point B
        point C
        point D
        point M
        line s
        line t
        line u
        line v
        line p
        line q
        line_through(s, A, B)
        line_through(t, B, C)
        line_through(u, C, D)
        line_through(v, A, D)
        parallel(s, u)
        parallel(t, v)
        line_through(p, A, C)
        line_through(q, B, D)
        midpoint(M, A, C)
        midpoint(M, B, D)
        incident(M, p)
        incident(M, q)
        """,
        description=(
            "In a parallelogram ABCD the diagonals AC and BD bisect each "
            "other: they cross in the common midpoint M."
        ),
        short_description="Diagonals of a parallelogram bisect each other.",
        keywords=("parallelogram", "diagonal", "midpoint", "parallel"),
        level=2,
    ),
    _entry(
        "GEO0011",
        "Two Perpendicular Lines",
        """
        point P
        line u
        line v
        perpendicular(u, v)
        incident(P, u)
        incident(P, v)
        """,
        description=(
            "Two lines meeting at a right angle in the point P, the "
            "simplest perpendicularity figure."
        ),
        short_description="Lines crossing at a right angle.",
        keywords=("perpendicular", "lines", "right angle", "intersection"),
        level=1,
        kind="construction",
    ),
    _entry(
        "GEO0012",
        "Circle and Diameter",
        """
        point A
        point B
        point O
        line d
        circle k
        circle_centered(k, O, A)
        on_circle(B, k)
        midpoint(O, A, B)
        line_through(d, A, B)
        incident(O, d)
        """,
        description=(
            "A circle with center O and a diameter AB: the center is the "
            "midpoint of the diameter's endpoints."
        ),
        short_description="Circle with one drawn diameter.",
        keywords=("circle", "diameter", "center", "chord"),
        level=1,
        kind="construction",
    ),
    _entry(
        "GEO0013",
        "Perpendicular Bisector of a Segment",
        """
        point A
        point B
        point M
        point P
        line d
        line s
        line_through(d, A, B)
        midpoint(M, A, B)
        incident(M, s)
        perpendicular(d, s)
        incident(P, s)
        equidistant(P, A, P, B)
        """,
        description=(
            "The perpendicular bisector s of a segment AB passes through "
            "the midpoint M at a right angle; every point P on it is "
            "equidistant from A and B."
        ),
        short_description="Locus of points equidistant from two points.",
        keywords=("segment", "perpendicular bisector", "midpoint", "locus"),
        level=2,
    ),
    _entry(
        "GEO0014",
        "Parallel Lines and a Transversal",
        """
        point A
        point B
        line a
        line b
        line t
        parallel(a, b)
        line_through(t, A, B)
        incident(A, a)
        incident(B, b)
        """,
        description=(
            "Two parallel lines cut by a transversal t; corresponding and "
            "alternate angles at the crossings A and B are equal."
        ),
        short_description="Transversal across two parallels.",
        keywords=("parallel", "transversal", "lines", "angles"),
        level=1,
        kind="construction",
    ),
    _entry(
        "GEO0015",
        "Simetria Axial",
        """
        point P
        point Q
        point M
        point R
        line e
        line s
        line_through(s, P, Q)
        midpoint(M, P, Q)
        incident(M, e)
        perpendicular(e, s)
        incident(R, e)
        equidistant(R, P, R, Q)
        """,
        description=(
            "Reflexão de um ponto P numa reta e: a imagem Q fica de tal "
            "modo que o eixo e é a mediatriz do segmento PQ, e cada ponto "
            "R do eixo é equidistante de P e de Q."
        ),
        short_description="Reflexão de um ponto num eixo.",
        keywords=("simetria", "reflexão", "eixo", "mediatriz"),
        level=2,
        kind="construction",
        language="pt",
    ),
    _entry(
        "GEO0016",
        "Medial Triangle",
        """
        point A
        point B
        point C
        point Ma
        point Mb
        point Mc
        line a
        line b
        line c
        line d
        line e
        line f
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        midpoint(Ma, B, C)
        midpoint(Mb, A, C)
        midpoint(Mc, A, B)
        line_through(d, Mb, Mc)
        line_through(e, Ma, Mc)
        line_through(f, Ma, Mb)
        parallel(a, d)
        parallel(b, e)
        parallel(c, f)
        """,
        description=(
            "Joining the midpoints of the sides of a triangle produces the "
            "medial triangle, whose sides are parallel to the original "
            "sides and half their length."
        ),
        short_description="Triangle formed by the side midpoints.",
        keywords=("triangle", "midpoint", "medial triangle", "midsegment", "parallel"),
    ),
    _entry(
        "GEO0017",
        "Inscribed Angle",
        """
        point A
        point B
        point C
        point O
        line u
        line v
        line w
        line p
        line q
        circle k
        circle_centered(k, O, A)
        on_circle(B, k)
        on_circle(C, k)
        line_through(w, A, B)
        line_through(u, A, C)
        line_through(v, B, C)
        line_through(p, A, O)
        line_through(q, B, O)
        """,
        description=(
            "The angle subtended by a chord AB at a point C of the circle "
            "is half the central angle subtended at the center O. Drawn "
            "with the chord, the inscribed legs and the central legs."
        ),
        short_description="Inscribed angle is half the central angle.",
        keywords=("circle", "inscribed angle", "central angle", "chord", "arc"),
    ),
    _entry(
        "GEO0018",
        "Tangent Circles",
        """
        point O1
        point O2
        point T
        line l
        circle k1
        circle k2
        circle_centered(k1, O1, T)
        circle_centered(k2, O2, T)
        line_through(l, O1, O2)
        incident(T, l)
        """,
        description=(
            "Two circles touching in a single point T; the point of "
            "tangency lies on the line through the two centers."
        ),
        short_description="Two circles touching in one point.",
        keywords=("circles", "tangent", "centers", "touching"),
        level=2,
        kind="construction",
    ),
    _entry(
        "GEO0019",
        "Nine-Point Circle",
        """
        point A
        point B
        point C
        point Ma
        point Mb
        point Mc
        point N
        line a
        line b
        line c
        circle n
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        midpoint(Ma, B, C)
        midpoint(Mb, A, C)
        midpoint(Mc, A, B)
        circle_centered(n, N, Ma)
        on_circle(Mb, n)
        on_circle(Mc, n)
        """,
        description=(
            "One circle passes through the three side midpoints of a "
            "triangle (and also through the altitude feet and the "
            "midpoints towards the orthocenter): the nine-point circle."
        ),
        short_description="Circle through the side midpoints.",
        keywords=("triangle", "nine point circle", "midpoint", "circle"),
        level=5,
    ),
    _entry(
        "GEO0020",
        "Varignon Parallelogram",
        """
        point A
        point B
        point C
        point D
        point P
        point Q
        point R
        point S
        line s
        line t
        line u
        line v
        line w
        line x
        line y
        line z
        line g
        line h
        line_through(s, A, B)
        line_through(t, B, C)
        line_through(u, C, D)
        line_through(v, A, D)
        midpoint(P, A, B)
        midpoint(Q, B, C)
        midpoint(R, C, D)
        midpoint(S, A, D)
        line_through(w, P, Q)
        line_through(x, Q, R)
        line_through(y, R, S)
        line_through(z, P, S)
        line_through(g, A, C)
        line_through(h, B, D)
        parallel(g, w)
        parallel(g, y)
        parallel(h, x)
        parallel(h, z)
        """,
        description=(
            "The midpoints of the sides of any quadrilateral ABCD form a "
            "parallelogram PQRS whose sides are parallel to the "
            "quadrilateral's diagonals."
        ),
        short_description="Side midpoints of a quadrilateral form a parallelogram.",
        keywords=("quadrilateral", "midpoint", "parallelogram", "diagonal"),
        level=4,
    ),
    _entry(
        "GEO0021",
        "Median of a Triangle",
        """
        point A
        point B
        point C
        point M
        line a
        line b
        line c
        line m
        line_through(a, B, C)
        line_through(b, A, C)
        line_through(c, A, B)
        midpoint(M, B, C)
        line_through(m, A, M)
        """,
        description=(
            "A single median of a triangle: the segment from the vertex A "
            "to the midpoint M of the opposite side BC."
        ),
        short_description="Vertex joined to the opposite midpoint.",
        keywords=("triangle", "median", "midpoint"),
        level=2,
        kind="construction",
    ),
    _entry(
        "GEO0022",
        "Concentric Circles",
        """
        point O
        point A
        point B
        circle k1
        circle k2
        circle_centered(k1, O, A)
        circle_centered(k2, O, B)
        """,
        description=(
            "Two circles sharing the same center O but passing through "
            "different points, hence with different radii."
        ),
        short_description="Two circles with a common center.",
        keywords=("circle", "concentric", "center", "radius"),
        level=2,
        kind="construction",
    ),
)


def seed_repository(repository: Repository) -> list[str]:
    """Force-insert every corpus entry; returns the identifiers."""
    return [repository.insert(entry, force=True) for entry in ENTRIES]


def main(argv: list[str] | None = None) -> int:
    import argparse

    parser = argparse.ArgumentParser(
        prog="python -m geokb.corpus",
        description="Seed a data directory with the demo corpus.",
    )
    parser.add_argument("data_dir", help="target data directory")
    args = parser.parse_args(argv)
    repository = Repository(args.data_dir)
    identifiers = seed_repository(repository)
    print(f"seeded {len(identifiers)} entries into {repository.data_dir}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
