"""Reproducible gallery figures.

Every figure is a pure function of its scenario constants, so regenerating a
figure always yields byte-identical SVG.  Figures 1 to 3 sweep the shape
parameters of the parametric families, figure 4 shows the sigma ladder for the
cubic family with the rational auxiliary, and figures 5 to 7 show the three
monotone interpolants of the demo dataset together with their error profiles.
"""

from __future__ import annotations

import numpy as np

from .auxiliary import cubic, expo_rational, trig
from .blending import BlendingSystem, lambda_mu, p_bezier, yan_cubic
from .datasets import demo_dataset, demo_reference
from .render import (
    CurveProblem,
    InterpResult,
    MarkerSet,
    Polyline,
    SceneSpec,
    curve_scene,
    render_svg,
    solve_interp_problem,
    parse_interp_problem,
)
from .interpolation import sample_interpolant

__all__ = ["FIGURE_NUMBERS", "figure_scenes", "write_figures"]

FIGURE_NUMBERS = (1, 2, 3, 4, 5, 6, 7)

# shared demo polygon; convex with a flat base so shape changes read clearly
_POLYGON = [[0.0, 0.0], [1.0, 2.0], [3.0, 2.5], [4.0, 0.0]]

_CURVE_SAMPLES = 257
_INTERP_SAMPLES = 601

_PALETTE = ("#1f6f8b", "#b43b3b", "#3b8b4f", "#8b6f1f", "#6f3b8b", "#3b4f8b", "#8b3b6f", "#4f8b3b", "#8b4f3b", "#3b8b8b")


def _family_scene(systems, aux, sigma) -> SceneSpec:
    lines = [
        Polyline(points=tuple(map(tuple, _POLYGON)), stroke="#999999", width=1.0, dash="5 4")
    ]
    for j, system in enumerate(systems):
        prob = CurveProblem(system=system, aux=aux, sigma=sigma, polygon=_polygon_obj())
        scene = curve_scene(prob, _CURVE_SAMPLES)
        lines.append(
            Polyline(points=scene.polylines[1].points, stroke=_PALETTE[j % len(_PALETTE)])
        )
    markers = (MarkerSet(points=tuple(map(tuple, _POLYGON))),)
    return SceneSpec(polylines=tuple(lines), markers=markers)


def _sigma_scene(system: BlendingSystem, aux, sigmas) -> SceneSpec:
    prob = CurveProblem(system=system, aux=aux, sigma=1.0, polygon=_polygon_obj())
    return curve_scene(prob, _CURVE_SAMPLES, sigmas=sigmas)


def _polygon_obj():
    from .curves import ControlPolygon

    return ControlPolygon(np.asarray(_POLYGON, dtype=float))


def _fig1():
    yield "fig1_gamma_family", _family_scene(
        [p_bezier(g) for g in (0.0, 0.25, 0.5, 0.75, 1.0)], cubic(), sigma=1.0
    )
    yield "fig1_sigma_family_gamma1", _sigma_scene(p_bezier(1.0), cubic(), (0.0, 0.25, 0.5, 0.75, 1.0))
    yield "fig1_sigma_family_gamma001", _sigma_scene(p_bezier(0.01), cubic(), (0.0, 0.25, 0.5, 0.75, 1.0))


def _fig2():
    yield "fig2_lambda_family", _family_scene(
        [lambda_mu(l, 0.0) for l in (0.0, 1.0, 5.0, 10.0, 30.0)], cubic(), sigma=1.0
    )
    yield "fig2_mu_family", _family_scene(
        [lambda_mu(0.0, m) for m in (0.0, 1.0, 5.0, 10.0, 30.0)], cubic(), sigma=1.0
    )
    yield "fig2_sigma_family_l0m0", _sigma_scene(
        lambda_mu(0.0, 0.0), expo_rational(), (0.0, 0.25, 0.5, 0.75, 1.0)
    )
    yield "fig2_sigma_family_l10m10", _sigma_scene(
        lambda_mu(10.0, 10.0), expo_rational(), (0.0, 0.25, 0.5, 0.75, 1.0)
    )


def _fig3():
    yield "fig3_lambda_family", _family_scene(
        [yan_cubic(l) for l in (-1.0, -0.5, 0.0, 0.5, 1.0)], trig(1), sigma=1.0
    )
    for tag, lam in (("l0", 0.0), ("lm1", -1.0), ("lp1", 1.0)):
        yield f"fig3_sigma_family_{tag}", _sigma_scene(
            yan_cubic(lam), trig(1), (0.0, 0.25, 0.5, 0.75, 1.0)
        )


def _fig4():
    lams = (-1.0, -0.5, 0.0, 0.5, 1.0)
    for k in range(1, 11):
        sigma = k / 10.0
        yield f"fig4_sigma_{sigma:.1f}", _family_scene(
            [yan_cubic(l) for l in lams], expo_rational(), sigma=sigma
        )


def _interp_figures(num: int, mode: str, strategy: str, spacing: dict):
    data = demo_dataset()
    pts = [[float(x), float(f)] for x, f in zip(data.x, data.f)]
    sigmas = (0.1, 0.5, 0.9, 1.0)
    results: list[tuple[float, InterpResult]] = []
    for s in sigmas:
        body = {"dataset": pts, "mode": mode, "solution_strategy": strategy, "sigma": s, **spacing}
        results.append((s, solve_interp_problem(parse_interp_problem(body))))

    lines = []
    for j, (s, res) in enumerate(results):
        xs, ys = sample_interpolant(res.curve, _INTERP_SAMPLES)
        lines.append(Polyline(points=tuple(zip(xs, ys)), stroke=_PALETTE[j % len(_PALETTE)]))
    markers = (MarkerSet(points=tuple(zip(data.x, data.f))),)
    yield f"fig{num}_interpolants", SceneSpec(polylines=tuple(lines), markers=markers)

    err_lines = []
    for j, (s, res) in enumerate(results):
        xs, ys = sample_interpolant(res.curve, _INTERP_SAMPLES)
        errs = np.abs(ys - demo_reference(xs))
        err_lines.append(Polyline(points=tuple(zip(xs, errs)), stroke=_PALETTE[j % len(_PALETTE)]))
    yield f"fig{num}_errors", SceneSpec(polylines=tuple(err_lines))


def _fig5():
    yield from _interp_figures(5, "c1", "sol1", {"s": 0.05})


def _fig6():
    yield from _interp_figures(6, "c2", "appendix_c", {"s": 0.03})


def _fig7():
    yield from _interp_figures(7, "c2", "remark", {"zeta": 0.02, "eta": 0.003})


_BUILDERS = {1: _fig1, 2: _fig2, 3: _fig3, 4: _fig4, 5: _fig5, 6: _fig6, 7: _fig7}


def figure_scenes(which: int):
    """Yield (name, SceneSpec) pairs for one figure number."""
    if which not in _BUILDERS:
        raise ValueError(f"unknown figure number {which}")
    yield from _BUILDERS[which]()


def write_figures(outdir, numbers=FIGURE_NUMBERS) -> list[str]:
    """Render the requested figures into outdir; returns the file paths written."""
    import os

    os.makedirs(outdir, exist_ok=True)
    written = []
    for num in numbers:
        for name, scene in figure_scenes(num):
            path = os.path.join(outdir, f"{name}.svg")
            with open(path, "wb") as fh:
                fh.write(render_svg(scene))
            written.append(path)
    return written
