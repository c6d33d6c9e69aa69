"""The standard rulebase: property vocabulary, classes, and rules.

Objects of class Polytope hold exact rational polyhedra (bounded or
pointed-unbounded, via the homogenizing coordinate).  LatticePolytope is
the subclass guarded by BOUNDED and LATTICE; its rules cover the
lattice-specific invariants.
"""

from __future__ import annotations

from . import geomcore, latticecore
from .errors import GeometryError, NotFullDimensionalError
from .ruleengine import ClassSpec, Kind, RuleBase, RuleSpec


def fresh_rulebase() -> RuleBase:
    """Build an independent copy of the standard rulebase."""
    rb = RuleBase()
    rb.register_class(ClassSpec("Polytope", "Polytope<Rational>"))
    _register_properties(rb)
    rb.register_class(ClassSpec(
        "LatticePolytope", "LatticePolytope", parent="Polytope",
        preconditions=(("BOUNDED", True), ("LATTICE", True))))
    _register_lattice_properties(rb)
    _register_rules(rb)
    return rb


def _register_properties(rb: RuleBase):
    for name, kind in (
        ("POINTS", Kind.MATRIX),
        ("VERTICES", Kind.MATRIX),
        ("FACETS", Kind.MATRIX),
        ("AFFINE_HULL", Kind.MATRIX),
        ("VERTICES_IN_FACETS", Kind.INCIDENCE),
        ("HASSE_DIAGRAM", Kind.HASSE),
        ("F_VECTOR", Kind.VECTOR),
        ("F2_VECTOR", Kind.MATRIX),
        ("GRAPH", Kind.GRAPH),
        ("DUAL_GRAPH", Kind.GRAPH),
        ("AMBIENT_DIM", Kind.INT),
        ("DIM", Kind.INT),
        ("BOUNDED", Kind.BOOL),
        ("POINTED", Kind.BOOL),
        ("LATTICE", Kind.BOOL),
        ("LATTICE_POINTS", Kind.MATRIX),
        ("N_LATTICE_POINTS", Kind.INT),
        ("INTERIOR_LATTICE_POINTS", Kind.MATRIX),
        ("N_INTERIOR_LATTICE_POINTS", Kind.INT),
        ("HILBERT_BASIS", Kind.MATRIX),
    ):
        rb.register_property(name, kind)


def _register_lattice_properties(rb: RuleBase):
    for name, kind in (
        ("REFLEXIVE", Kind.BOOL),
        ("SMOOTH", Kind.BOOL),
        ("H_STAR_VECTOR", Kind.VECTOR),
        ("LATTICE_VOLUME", Kind.INT),
        ("LATTICE_DEGREE", Kind.INT),
        ("LATTICE_CODEGREE", Kind.INT),
    ):
        rb.register_property(name, kind, klass="LatticePolytope")


def _register_rules(rb: RuleBase):
    def rule(targets, sources, body, klass="Polytope", weight=1, rid=None):
        targets = tuple(targets)
        sources = tuple(sources)
        rid = rid or (", ".join(targets) + " : " + ", ".join(sources))
        rb.register_rule(RuleSpec(rid, targets, sources, body,
                                  required_class=klass, weight=weight))

    # hull conversions -------------------------------------------------
    def facets_from_points(src):
        facets, hull = geomcore.facets_from_points(src["POINTS"])
        return {"FACETS": facets, "AFFINE_HULL": hull}

    rule(("FACETS", "AFFINE_HULL"), ("POINTS",), facets_from_points)

    def facets_from_vertices(src):
        facets, hull = geomcore.facets_from_points(src["VERTICES"])
        return {"FACETS": facets, "AFFINE_HULL": hull}

    rule(("FACETS", "AFFINE_HULL"), ("VERTICES",), facets_from_vertices)

    rule(("AFFINE_HULL",), ("FACETS",),
         lambda src: {"AFFINE_HULL":
                      geomcore.affine_hull_from_facets(src["FACETS"])})

    rule(("VERTICES",), ("POINTS", "FACETS", "AFFINE_HULL"),
         lambda src: {"VERTICES": geomcore.extreme_points_in_input_order(
             src["POINTS"], src["FACETS"], src["AFFINE_HULL"])},
         rid="VERTICES : POINTS, FACETS, AFFINE_HULL")

    rule(("VERTICES",), ("FACETS", "AFFINE_HULL"),
         lambda src: {"VERTICES": geomcore.vertices_from_facets(
             src["FACETS"], src["AFFINE_HULL"])},
         rid="VERTICES : FACETS, AFFINE_HULL")

    # combinatorics ----------------------------------------------------
    rule(("VERTICES_IN_FACETS",), ("VERTICES", "FACETS"),
         lambda src: {"VERTICES_IN_FACETS":
                      geomcore.incidence(src["VERTICES"], src["FACETS"])})

    rule(("HASSE_DIAGRAM",), ("VERTICES_IN_FACETS",),
         lambda src: {"HASSE_DIAGRAM":
                      geomcore.hasse_diagram(src["VERTICES_IN_FACETS"])})

    def f_vectors(src):
        h = src["HASSE_DIAGRAM"]
        return {"F_VECTOR": geomcore.f_vector(h),
                "F2_VECTOR": geomcore.f2_vector(h)}

    rule(("F_VECTOR", "F2_VECTOR"), ("HASSE_DIAGRAM",), f_vectors)

    def graphs(src):
        g, dual = geomcore.skeleton_graphs(src["HASSE_DIAGRAM"],
                                           src["VERTICES_IN_FACETS"])
        return {"GRAPH": g, "DUAL_GRAPH": dual}

    rule(("GRAPH", "DUAL_GRAPH"), ("HASSE_DIAGRAM", "VERTICES_IN_FACETS"),
         graphs)

    # dimensions and flags ----------------------------------------------
    for source in ("FACETS", "POINTS", "VERTICES"):
        rule(("AMBIENT_DIM",), (source,),
             lambda src, s=source: {"AMBIENT_DIM":
                                    geomcore.ambient_dim(src[s])})
    for source in ("VERTICES", "POINTS"):
        rule(("DIM",), (source,),
             lambda src, s=source: {"DIM":
                                    geomcore.dim_from_generators(src[s])})
    rule(("DIM",), ("FACETS", "AFFINE_HULL"),
         lambda src: {"DIM": geomcore.dim_from_facets(src["FACETS"],
                                                      src["AFFINE_HULL"])})
    for source in ("VERTICES", "POINTS"):
        rule(("BOUNDED",), (source,),
             lambda src, s=source: {"BOUNDED": geomcore.is_bounded(src[s])})
    rule(("POINTED",), ("FACETS", "AFFINE_HULL"),
         lambda src: {"POINTED": geomcore.is_pointed(src["FACETS"],
                                                     src["AFFINE_HULL"])})
    rule(("LATTICE",), ("VERTICES", "BOUNDED"),
         lambda src: {"LATTICE": latticecore.lattice_test(src["VERTICES"],
                                                          src["BOUNDED"])})

    # lattice points -----------------------------------------------------
    def latpoints(src):
        if not src["BOUNDED"]:
            raise GeometryError(
                "lattice point enumeration needs a bounded polytope; "
                "use HILBERT_BASIS for cones")
        return {"LATTICE_POINTS": latticecore.lattice_points(
            src["VERTICES"], src["FACETS"], src["AFFINE_HULL"])}

    rule(("LATTICE_POINTS",),
         ("VERTICES", "FACETS", "AFFINE_HULL", "BOUNDED"), latpoints)

    rule(("N_LATTICE_POINTS",), ("LATTICE_POINTS",),
         lambda src: {"N_LATTICE_POINTS": src["LATTICE_POINTS"].n_rows})

    rule(("INTERIOR_LATTICE_POINTS",), ("LATTICE_POINTS", "FACETS"),
         lambda src: {"INTERIOR_LATTICE_POINTS": latticecore.interior_rows(
             src["LATTICE_POINTS"], src["FACETS"])})

    rule(("N_INTERIOR_LATTICE_POINTS",), ("INTERIOR_LATTICE_POINTS",),
         lambda src: {"N_INTERIOR_LATTICE_POINTS":
                      src["INTERIOR_LATTICE_POINTS"].n_rows})

    # Hilbert bases -------------------------------------------------------
    rule(("HILBERT_BASIS",), ("POINTS",),
         lambda src: {"HILBERT_BASIS":
                      latticecore.hilbert_basis(src["POINTS"])},
         rid="HILBERT_BASIS : POINTS")
    rule(("HILBERT_BASIS",), ("VERTICES",),
         lambda src: {"HILBERT_BASIS":
                      latticecore.hilbert_basis(src["VERTICES"])},
         rid="HILBERT_BASIS : VERTICES")

    # LatticePolytope-only rules ------------------------------------------
    rule(("REFLEXIVE",), ("FACETS", "AFFINE_HULL"),
         lambda src: {"REFLEXIVE": latticecore.reflexive(
             src["FACETS"], src["AFFINE_HULL"])},
         klass="LatticePolytope")

    rule(("SMOOTH",), ("HASSE_DIAGRAM", "VERTICES", "DIM", "AMBIENT_DIM"),
         lambda src: {"SMOOTH": latticecore.smooth(
             src["HASSE_DIAGRAM"], src["VERTICES"], src["DIM"],
             src["AMBIENT_DIM"])},
         klass="LatticePolytope")

    def hstar(src):
        if src["DIM"] != src["AMBIENT_DIM"]:
            raise NotFullDimensionalError(
                "h* needs a full-dimensional polytope")
        counts = latticecore.ehrhart_counts(src["VERTICES"], src["FACETS"],
                                            src["DIM"])
        return {"H_STAR_VECTOR": latticecore.h_star(counts, src["DIM"])}

    rule(("H_STAR_VECTOR",), ("VERTICES", "FACETS", "DIM", "AMBIENT_DIM"),
         hstar, klass="LatticePolytope")

    rule(("LATTICE_VOLUME",), ("H_STAR_VECTOR",),
         lambda src: {"LATTICE_VOLUME":
                      latticecore.lattice_volume(src["H_STAR_VECTOR"])},
         klass="LatticePolytope")
    rule(("LATTICE_DEGREE",), ("H_STAR_VECTOR",),
         lambda src: {"LATTICE_DEGREE":
                      latticecore.lattice_degree(src["H_STAR_VECTOR"])},
         klass="LatticePolytope")
    rule(("LATTICE_CODEGREE",), ("H_STAR_VECTOR", "DIM"),
         lambda src: {"LATTICE_CODEGREE": latticecore.lattice_codegree(
             src["H_STAR_VECTOR"], src["DIM"])},
         klass="LatticePolytope")


DEFAULT_RULEBASE = fresh_rulebase()
