import pytest

from oax.config import Config, load_config, parse_config
from oax.errors import ConfigError
from oax.interval import Density


def test_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = load_config()
    assert cfg == Config()
    assert len(cfg.profile()) == 15


def test_full_file(tmp_path, monkeypatch):
    (tmp_path / "oax.toml").write_text(
        'format = "json"\ntimeout = 3\njobs = 2\ndiscrete = ["width"]\n[provers]\nz3 = "/opt/z3"\n'
    )
    monkeypatch.chdir(tmp_path)
    cfg = load_config()
    assert (cfg.format, cfg.timeout, cfg.jobs) == ("json", 3, 2)
    assert cfg.provers == {"z3": "/opt/z3"}
    assert cfg.profile().resolve("width").domain.density is Density.INTEGER
    assert cfg.source == "oax.toml"


@pytest.mark.parametrize("text", [
    'colour = "red"',
    'format = "yaml"',
    "timeout = -1",
    "jobs = 0",
    'jobs = "many"',
    'discrete = "width"',
    'discrete = ["nope"]',
    '[provers]\neprover = "e"',
    "format = ",
])
def test_rejected(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_missing_explicit_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "none.toml"))


def test_override_ignores_none():
    cfg = Config().override(format=None, jobs=8)
    assert cfg.format == "text" and cfg.jobs == 8
    with pytest.raises(ConfigError):
        Config().override(format="xml")
