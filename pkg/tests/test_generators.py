"""Generator catalog: round trips, monotonicity, validation, spec parsing."""

import numpy as np
import pytest

from pseudocalc import generators as G

CATALOG = [
    G.identity(),
    G.sqrt_gen(),
    G.half(),
    G.power(0.5),
    G.power(2.0),
    G.power(3.0),
    G.exp_family(4.0),
    G.inv_power(2.0),
]


class TestEval:
    def test_forward_examples(self):
        assert G.eval_forward(G.sqrt_gen(), 0.25) == 0.5
        assert G.eval_forward(G.half(), 1.0) == 0.5
        assert G.eval_forward(G.identity(), 0.7) == 0.7

    def test_inverse_examples(self):
        assert G.eval_inverse(G.sqrt_gen(), 1.0 / 3.0) == pytest.approx(1.0 / 9.0, abs=1e-15)
        # worked value: g(x)=x/2 has g^{-1}(7/192) = 14/192
        assert G.eval_inverse(G.half(), 7.0 / 192.0) == pytest.approx(14.0 / 192.0, abs=1e-15)
        assert G.eval_inverse(G.identity(), 0.3) == 0.3

    def test_forward_domain_error(self):
        with pytest.raises(G.RangeError):
            G.eval_forward(G.sqrt_gen(), 1.5)
        with pytest.raises(G.RangeError):
            G.eval_forward(G.sqrt_gen(), -0.1)

    def test_singular_endpoint(self):
        gen = G.inv_power(2.0)
        with pytest.raises(G.SingularityError):
            G.eval_forward(gen, gen.domain_low)
        assert G.eval_forward(gen, 0.5) == 4.0

    def test_inverse_range_error(self):
        with pytest.raises(G.RangeError):
            G.eval_inverse(G.sqrt_gen(), 2.0)
        with pytest.raises(G.RangeError):
            G.eval_inverse(G.inv_power(2.0), 0.5)


class TestValidation:
    @pytest.mark.parametrize("gen", CATALOG, ids=lambda g: g.name)
    def test_catalog_passes(self, gen):
        report = G.validate_generator(gen, 1000)
        assert report.passed, report
        assert report.max_roundtrip_error < 1e-9
        assert report.monotonic

    def test_square_with_sqrt_inverse(self):
        gen = G.Generator("square", lambda x: x**2, np.sqrt)
        assert G.validate_generator(gen, 100).passed

    def test_mismatched_inverse_fails(self):
        # forward sqrt with inverse 2y: |2*sqrt(x) - x| is the reported error
        gen = G.Generator("broken", np.sqrt, lambda y: 2.0 * y)
        report = G.validate_generator(gen, 100)
        assert not report.passed
        xs = np.linspace(0, 1, 102)[1:-1]
        assert report.max_roundtrip_error == pytest.approx(
            float(np.max(np.abs(2.0 * np.sqrt(xs) - xs))), abs=1e-12
        )

    def test_non_monotone_fails(self):
        gen = G.Generator("bump", lambda x: x * (1.0 - x), lambda y: y)
        report = G.validate_generator(gen, 200)
        assert not report.monotonic
        assert report.violation_at is not None

    def test_samples_floor(self):
        with pytest.raises(ValueError):
            G.validate_generator(G.identity(), 1)

    def test_singular_clamp_recorded(self):
        gen = G.inv_power(1.5)
        assert gen.domain_low == G.SINGULAR_CLAMP
        report = G.validate_generator(gen, 100)
        assert any("clamp" in note for note in report.notes)


class TestRoundTripGrid:
    @pytest.mark.parametrize("gen", CATALOG, ids=lambda g: g.name)
    def test_interior_grid_roundtrip(self, gen):
        xs = np.linspace(gen.domain_low, gen.domain_high, 1002)[1:-1]
        back = np.asarray(gen.inverse(np.asarray(gen.forward(xs))))
        assert float(np.max(np.abs(back - xs))) < 1e-9

    @pytest.mark.parametrize("gen", CATALOG, ids=lambda g: g.name)
    def test_strict_monotonicity(self, gen):
        xs = np.linspace(gen.domain_low, gen.domain_high, 1002)[1:-1]
        diffs = np.diff(np.asarray(gen.forward(xs), dtype=float))
        want = 1.0 if gen.direction == G.INCREASING else -1.0
        assert np.all(np.sign(diffs) == want)


class TestSpecParsing:
    def test_plain_names(self):
        assert G.make_generator("sqrt").name == "sqrt"
        assert G.make_generator("identity").name == "identity"
        assert G.make_generator("half").name == "half"

    def test_parametric(self):
        gen = G.make_generator("power:0.5")
        assert gen.forward(0.25) == pytest.approx(0.5)
        gen = G.make_generator("exp:4.0")
        assert gen.forward(0.0) == 1.0
        gen = G.make_generator("invpower:2")
        assert gen.direction == G.DECREASING

    def test_errors(self):
        with pytest.raises(ValueError):
            G.make_generator("nope")
        with pytest.raises(ValueError):
            G.make_generator("power")
        with pytest.raises(ValueError):
            G.make_generator("power:-1")
        with pytest.raises(ValueError):
            G.make_generator("exp:0")
