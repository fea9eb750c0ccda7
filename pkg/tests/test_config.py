"""Tests for JSON codecs, run configurations and CSV/JSON output."""

import io
import json

import pytest

from measures.errors import ConfigError, InadmissibleState, InvalidParams
from measures.measure import Atom, Component, LambdaProduct, atom_weights
from measures.spaces import (
    ColourSet, Finite, FullSpace, Index, IntervalUnion, Lattice, Pair, Point, Product, ProductSet, Real, UnitInterval,
)
from kernels.admissibility import IntegerUrn
from converters.codec import (
    decode_colour, decode_measure, decode_space, decode_test_set, encode_measure, encode_space, encode_test_set,
)
from converters.config import (
    DEFAULT_STEPS, UrnConfig, build_spec, build_statistics, load_config, parse_config, with_overrides,
)
from converters.export import format_float, write_json, write_trajectories, write_values
from models.removal import without_replacement_urn
from simulation.process import run
from simulation.statistics import Evaluate, Fraction, Mass

F2 = Finite(2)

REMOVAL_CONFIG = {
    "model": {"kernel": "without_replacement"},
    "space": {"finite": 2},
    "params": {"addition": [[0, 0], [0, 0]]},
    "x0": [{"w": 2, "atom": 0}, {"w": 1, "atom": 1}],
    "steps": 5,
}


class TestSpaceCodec:
    """Test space encodings."""

    def test_decode_spaces(self):
        """Test the four space forms."""
        assert decode_space({"finite": 3}) == Finite(3)
        assert decode_space({"lattice": 2}) == Lattice(2)
        assert decode_space("unit_interval") == UnitInterval()
        assert decode_space({"product": {"product": {"finite": 2}}}) == Product(Product(F2))

    def test_encode_space(self):
        """Test the inverse direction."""
        assert encode_space(Product(Lattice(1))) == {"product": {"lattice": 1}}

    @pytest.mark.parametrize("data", [
        {"finite": 0}, {"finite": "2"}, {"finite": True}, {"lattice": True}, {"torus": 2}, "reals", None,
    ])
    def test_invalid_spaces(self, data):
        """Test malformed space encodings."""
        with pytest.raises(ConfigError):
            decode_space(data)


class TestColourCodec:
    """Test colour encodings."""

    def test_decode_colours(self):
        """Test one colour per space kind."""
        assert decode_colour(F2, 1) == Index(1)
        assert decode_colour(Lattice(2), [1, -2]) == Point((1, -2))
        assert decode_colour(UnitInterval(), 0.25) == Real(0.25)
        assert decode_colour(Product(F2), {"base": 0, "u": 0.5}) == Pair(Index(0), 0.5)

    @pytest.mark.parametrize("space, data", [
        (F2, 2),
        (F2, True),
        (Lattice(2), [1]),
        (UnitInterval(), 1.5),
        (Product(F2), 0),
    ])
    def test_invalid_colours(self, space, data):
        """Test values outside the space."""
        with pytest.raises(ConfigError):
            decode_colour(space, data)


class TestMeasureCodec:
    """Test measure encodings."""

    def test_decode_atomic(self):
        """Test atoms on a finite space."""
        mu = decode_measure({"space": {"finite": 2}, "components": [{"w": 2, "atom": 0}, {"w": 1, "atom": 1}]})
        assert atom_weights(mu) == {Index(0): 2.0, Index(1): 1.0}

    def test_decode_continuous(self):
        """Test a family component on [0,1]."""
        mu = decode_measure([{"w": 1.5, "family": "beta", "params": [2, 2]}], UnitInterval())
        assert mu.total == 1.5

    def test_decode_product_lambda(self):
        """Test an atom times lambda."""
        mu = decode_measure({"space": {"product": {"finite": 2}},
                             "components": [{"w": 1, "product_lambda": {"atom": 1}}]})
        assert mu.components == (Component(1.0, LambdaProduct(Atom(Index(1)))),)

    def test_canonical_form_is_stable(self):
        """Test encoding a decoded measure gives the same document."""
        data = {"space": {"finite": 2}, "components": [{"w": 2.0, "atom": 0}, {"w": 1.0, "atom": 1}]}
        assert encode_measure(decode_measure(data)) == data

    @pytest.mark.parametrize("components", [
        [{"w": -1, "atom": 0}],
        [{"atom": 0}],
        [{"w": 1}],
        [{"w": 1, "family": "cauchy", "params": []}],
        {"w": 1, "atom": 0},
    ])
    def test_invalid_measures(self, components):
        """Test malformed components."""
        with pytest.raises(ConfigError):
            decode_measure(components, F2)

    def test_bare_list_needs_space(self):
        """Test a component list without a space."""
        with pytest.raises(ConfigError, match="needs a space"):
            decode_measure([{"w": 1, "atom": 0}])


class TestTestSetCodec:
    """Test test-set encodings."""

    def test_decode_test_sets(self):
        """Test each test-set form."""
        assert decode_test_set(F2, "full") == FullSpace()
        assert decode_test_set(F2, {"colours": [0]}) == ColourSet.of(Index(0))
        assert decode_test_set(UnitInterval(), {"intervals": [[0, 0.5]]}) == IntervalUnion.of((0, 0.5))
        product = decode_test_set(Product(F2), {"product": {"colours": [1]}, "interval": [[0.2, 0.4]]})
        assert product == ProductSet(ColourSet.of(Index(1)), IntervalUnion.of((0.2, 0.4)))

    def test_encode_test_set(self):
        """Test the inverse direction."""
        assert encode_test_set(ColourSet.of(Index(1), Index(0))) == {"colours": [0, 1]}

    def test_invalid_test_sets(self):
        """Test unknown forms and bad intervals."""
        with pytest.raises(ConfigError):
            decode_test_set(F2, {"points": [0]})
        with pytest.raises(ConfigError):
            decode_test_set(UnitInterval(), {"intervals": [[0.5, 2.0]]})
        with pytest.raises(ConfigError, match="product space"):
            decode_test_set(F2, {"product": "full"})


class TestParseConfig:
    """Test configuration validation."""

    def test_defaults(self):
        """Test a minimal document."""
        config = parse_config({"model": "friedman_random"})
        assert config == UrnConfig("friedman_random")
        assert config.steps == DEFAULT_STEPS
        assert config.stats == ({"name": "mass"},)

    def test_unknown_fields(self):
        """Test unknown top-level fields are rejected."""
        with pytest.raises(ConfigError, match="Unknown configuration fields: colour, foo"):
            parse_config({"model": "friedman_random", "foo": 1, "colour": 2})

    def test_unknown_stat_fields(self):
        """Test unknown statistic fields are rejected."""
        with pytest.raises(ConfigError, match="Unknown statistic fields"):
            parse_config({"model": "friedman_random", "stats": [{"name": "mass", "bins": 3}]})

    @pytest.mark.parametrize("data", [
        {},
        {"model": 3},
        {"model": {"kernel": "polya", "a": 1}},
        {"model": "friedman_random", "steps": -1},
        {"model": "friedman_random", "replicates": 0},
        {"model": "friedman_random", "seed": 1.5},
        {"model": "friedman_random", "steps": True},
        {"model": "friedman_random", "params": [0.5]},
        {"model": "friedman_random", "stats": []},
        {"model": "friedman_random", "x0": {"w": 1}},
    ])
    def test_invalid_documents(self, data):
        """Test values of the wrong type or range."""
        with pytest.raises(ConfigError):
            parse_config(data)

    def test_string_statistics(self):
        """Test bare statistic names."""
        config = parse_config({"model": "friedman_random", "stats": ["mass", "distinct_atoms"]})
        assert config.stats == ({"name": "mass"}, {"name": "distinct_atoms"})

    def test_to_dict_parses_back(self):
        """Test to_dict gives an equal config."""
        config = parse_config(REMOVAL_CONFIG)
        assert parse_config(config.to_dict()) == config
        assert json.loads(json.dumps(config.to_dict())) == config.to_dict()

    def test_overrides(self):
        """Test command-line values win."""
        config = with_overrides(parse_config(REMOVAL_CONFIG), steps=9, seed=4, stats=["distinct_atoms"])
        assert (config.steps, config.seed, config.replicates) == (9, 4, 1)
        assert config.stats == ({"name": "distinct_atoms"},)
        assert with_overrides(config) == config

    def test_override_several_statistics(self):
        """Test overridden statistics parse like the config file's."""
        share = {"name": "fraction", "test_set": {"colours": [0]}}
        config = with_overrides(parse_config({"model": "friedman_random"}), stats=["mass", share])
        assert config.stats == ({"name": "mass"}, share)
        assert len(build_statistics(config, F2)) == 2

    def test_load_config(self, tmp_path):
        """Test reading a file."""
        path = tmp_path / "urn.json"
        path.write_text(json.dumps(REMOVAL_CONFIG), encoding="utf-8")
        assert load_config(path) == parse_config(REMOVAL_CONFIG)

    def test_load_config_errors(self, tmp_path):
        """Test missing and malformed files."""
        with pytest.raises(ConfigError, match="Cannot read"):
            load_config(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{model:", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(bad)


class TestBuildSpec:
    """Test building urns from configurations."""

    def test_named_model(self):
        """Test a built-in model with parameters."""
        spec = build_spec(parse_config({"model": "eggenberger_polya", "params": {"a": 2, "w": [1, 3]}}))
        assert spec.name == "eggenberger_polya"
        assert spec.x0.total == 4.0

    def test_named_model_with_start(self):
        """Test replacing the model's initial state."""
        config = parse_config({"model": "friedman_random", "x0": [{"w": 5, "atom": 1}]})
        assert atom_weights(build_spec(config).x0) == {Index(1): 5.0}

    def test_named_model_space_mismatch(self):
        """Test a space that disagrees with the model."""
        with pytest.raises(ConfigError, match="lives on"):
            build_spec(parse_config({"model": "friedman_random", "space": {"finite": 3}}))

    def test_invalid_model_params(self):
        """Test parameters the model rejects."""
        with pytest.raises(InvalidParams):
            build_spec(parse_config({"model": "friedman_random", "params": {"p": 2.0}}))

    def test_kernel_config(self):
        """Test a removal kernel gets the integer-urn admissible set."""
        spec = build_spec(parse_config(REMOVAL_CONFIG))
        assert isinstance(spec.admissibility, IntegerUrn)
        assert spec.space == F2
        reference = without_replacement_urn(2, [[0, 0], [0, 0]], [2, 1])
        assert run(spec, 5, seed=3).masses() == run(reference, 5, seed=3).masses()

    def test_kernel_config_needs_start(self):
        """Test kernel configs without x0."""
        data = {key: value for key, value in REMOVAL_CONFIG.items() if key != "x0"}
        with pytest.raises(ConfigError, match="space and x0"):
            build_spec(parse_config(data))

    def test_fractional_removal_start(self):
        """Test a removal urn cannot start from fractional balls."""
        data = {**REMOVAL_CONFIG, "x0": [{"w": 1.5, "atom": 0}]}
        with pytest.raises(InadmissibleState):
            build_spec(parse_config(data))

    def test_unknown_kernel(self):
        """Test unknown kernel names."""
        data = {**REMOVAL_CONFIG, "model": {"kernel": "hoppe"}}
        with pytest.raises(InvalidParams, match="Unknown kernel"):
            build_spec(parse_config(data))


class TestBuildStatistics:
    """Test statistics from configurations."""

    def test_named_statistics(self):
        """Test names, test sets and labels."""
        config = parse_config({"model": "friedman_random", "stats": [
            "mass",
            {"name": "fraction", "test_set": {"colours": [0]}, "label": "share"},
            {"name": "evaluate", "test_set": "full"},
        ]})
        stats = build_statistics(config, F2)
        assert stats == (Mass(), Fraction(ColourSet.of(Index(0)), "share"), Evaluate(FullSpace(), "evaluate"))

    def test_duplicate_labels(self):
        """Test two statistics with the same label."""
        config = parse_config({"model": "friedman_random", "stats": [
            {"name": "fraction", "test_set": {"colours": [0]}},
            {"name": "fraction", "test_set": {"colours": [1]}},
        ]})
        with pytest.raises(ConfigError, match="unique"):
            build_statistics(config, F2)

    def test_unknown_statistic(self):
        """Test unknown names and missing test sets."""
        with pytest.raises(ConfigError, match="Unknown statistic"):
            build_statistics(parse_config({"model": "friedman_random", "stats": ["variance"]}), F2)
        with pytest.raises(ConfigError, match="needs a test_set"):
            build_statistics(parse_config({"model": "friedman_random", "stats": ["fraction"]}), F2)


class TestExport:
    """Test CSV and JSON output."""

    def test_format_float(self):
        """Test 17 significant digits."""
        assert format_float(2.0) == "2"
        assert format_float(0.1) == "0.10000000000000001"
        assert float(format_float(1 / 3)) == 1 / 3

    def test_write_trajectories(self):
        """Test the long CSV layout."""
        traj = run(without_replacement_urn(2, [[0, 0], [0, 0]], [2, 1]), 5)
        out = io.StringIO()
        rows = write_trajectories([traj], out)
        lines = out.getvalue().splitlines()
        assert lines[0] == "replicate,step,stat_name,value"
        assert lines[1:] == ["0,0,mass,3", "0,1,mass,2", "0,2,mass,1", "0,3,mass,0"]
        assert rows == 4

    def test_write_trajectories_padded(self):
        """Test rows after stopping when padded."""
        traj = run(without_replacement_urn(2, [[0, 0], [0, 0]], [2, 1]), 5)
        out = io.StringIO()
        assert write_trajectories([traj], out, pad_stopped=True) == 6
        assert out.getvalue().splitlines()[-1] == "0,5,mass,0"

    def test_write_values(self):
        """Test one value per replicate."""
        out = io.StringIO()
        write_values([0.5, 0.25], out, first_replicate=3)
        assert out.getvalue() == "replicate,value\n3,0.5\n4,0.25\n"

    def test_write_json(self):
        """Test sorted keys and a trailing newline."""
        out = io.StringIO()
        write_json({"pass": True, "alpha": 0.01}, out)
        assert out.getvalue() == '{\n  "alpha": 0.01,\n  "pass": true\n}\n'
