import numpy as np
import pytest

from entbath.composer import Frame, Method
from entbath.config import PRESETS, load_config, loads_config, preset_text
from entbath.errors import ConfigError

GOOD = """
[model]
delta = 0.2
n_modes = 16
dt = 0.02
t_max = 10.0

[initial]
kind = anti_bell
frame = rsb

[run]
method = both
alphas = 0.01, 0.1
a_squared = 0.25, 0.5
output_every = 0.5

[output]
prefix = demo
"""


def test_parse_good_config():
    cfg = loads_config(GOOD)
    assert cfg.delta == 0.2
    assert cfg.methods == (Method.D1, Method.RWA)
    assert cfg.alphas == (0.01, 0.1)
    assert cfg.a_values == pytest.approx((0.5, np.sqrt(0.5)))
    assert cfg.frame == Frame.RSB
    assert cfg.prefix == "demo"
    np.testing.assert_allclose(cfg.times, np.arange(0.0, 10.5, 0.5))


def test_range_grid():
    cfg = loads_config(GOOD.replace("a_squared = 0.25, 0.5", "a_squared = 0.0:1.0:0.25"))
    assert len(cfg.a_values) == 5
    assert cfg.a_values[-1] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "mangle",
    [
        lambda t: t.replace("[model]", "[modell]"),
        lambda t: t.replace("delta = 0.2", "delta = 0.2\nbogus = 1"),
        lambda t: t.replace("kind = anti_bell", "kind = ghz"),
        lambda t: t.replace("frame = rsb", "frame = lab"),
        lambda t: t.replace("method = both", "method = magic"),
        lambda t: t.replace("alphas = 0.01, 0.1", "alphas ="),
        lambda t: t.replace("a_squared = 0.25, 0.5", "a_squared = 0.5, 1.5"),
        lambda t: t.replace(
            "a_squared = 0.25, 0.5", "a_squared = 0.25\na_values = 0.5"
        ),
        lambda t: t.replace("output_every = 0.5", "output_every = 0.03"),
        lambda t: t.replace("method = both", "method = rwa").replace(
            "frame = rsb", "frame = sb"
        ),
        lambda t: t.replace("dt = 0.02", "dt = -0.1"),
    ],
)
def test_invalid_configs_rejected(mangle):
    with pytest.raises(ConfigError):
        loads_config(mangle(GOOD))


def test_missing_a_grid_rejected():
    bad = GOOD.replace("a_squared = 0.25, 0.5\n", "")
    with pytest.raises(ConfigError):
        loads_config(bad)


def test_presets_parse():
    for name in PRESETS:
        cfg = loads_config(preset_text(name))
        assert cfg.delta == 0.2
        assert cfg.n_modes == 400
    fig1 = loads_config(preset_text("fig1"))
    assert fig1.kind == "mixed"
    assert fig1.methods == (Method.D1, Method.RWA)
    fig3 = loads_config(preset_text("fig3"))
    assert fig3.frame == Frame.SB


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset_text("fig9")


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.ini")


def test_load_config_roundtrip(tmp_path):
    path = tmp_path / "demo.ini"
    path.write_text(GOOD)
    cfg = load_config(path)
    assert cfg.alphas == (0.01, 0.1)
