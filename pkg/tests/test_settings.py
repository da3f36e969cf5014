import pytest

from src.errors import ConfigError
from src.settings import Settings, load_config, load_settings


def test_defaults_come_from_engine_yaml():
    s = load_settings(environ={})
    assert s.max_n == 5
    assert s.verify_min_n == 2
    assert s.window_radius is None
    assert s.sample_count == 100_000


def test_precedence_flags_over_env_over_file(tmp_path):
    config = tmp_path / "engine.yaml"
    config.write_text("engine:\n  max_n: 3\n  output_dir: from_file\n", encoding="utf-8")
    env = {"COAMOEBA_MAX_N": "4", "COAMOEBA_OUTPUT_DIR": "from_env"}
    s = load_settings(config_path=config, environ=env)
    assert (s.max_n, s.output_dir) == (4, "from_env")
    s = load_settings({"max_n": 2, "window_radius": None}, config_path=config, environ=env)
    assert s.max_n == 2
    assert s.window_radius is None
    assert load_settings(config_path=config, environ={}).output_dir == "from_file"


def test_config_env_var_selects_the_file(tmp_path, monkeypatch):
    config = tmp_path / "other.yaml"
    config.write_text("engine:\n  verify_min_n: 3\n", encoding="utf-8")
    monkeypatch.setenv("COAMOEBA_CONFIG", str(config))
    assert load_config()["verify_min_n"] == 3


def test_missing_explicit_config_is_an_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.yaml")


def test_non_mapping_config_is_rejected(tmp_path):
    config = tmp_path / "list.yaml"
    config.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(config)


@pytest.mark.parametrize(
    "overrides",
    [{"max_n": 0}, {"verify_min_n": -1}, {"heartbeat_interval_sec": 0}, {"sample_count": -5}, {"max_n": "many"}],
)
def test_invalid_values_raise_config_error(overrides):
    with pytest.raises(ConfigError):
        load_settings(overrides, environ={})


def test_radius_for():
    assert Settings().radius_for(3) == 3
    assert Settings(window_radius=6).radius_for(3) == 6
    with pytest.raises(ConfigError):
        Settings(window_radius=2).radius_for(3)
    with pytest.raises(ConfigError):
        Settings().radius_for(0)


def test_verify_range():
    s = Settings(max_n=4)
    assert s.verify_range() == range(2, 5)
    assert s.verify_range(n=1) == range(1, 2)
    assert s.verify_range(max_n=3) == range(2, 4)
    with pytest.raises(ConfigError):
        s.verify_range(max_n=1)
    with pytest.raises(ConfigError):
        Settings(window_radius=3).verify_range()
