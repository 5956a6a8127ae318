"""Parameter validation, derived couplings, and config round-trips."""

import json
import math

import pytest

from chiralight import errors
from chiralight.params import (MediumParams, SystemParams, check,
                               derived_couplings, from_dict, load_config,
                               loads, to_dict, validate, with_overrides)


def test_defaults_validate():
    cfg = validate(SystemParams(), MediumParams())
    assert cfg.system.omega_2 == 1.0
    assert cfg.medium.dipole_ratio == pytest.approx(5.3e-5)


def test_check_returns_every_violation_at_once():
    bad_sys = SystemParams(gamma_1=0.0, gamma_2=-1.0, alpha_1=0.5,
                           omega_1=-0.2, phi=float("nan"))
    bad_med = MediumParams(v_doppler=-0.5, length_L=0.0)
    errs = check(bad_sys, bad_med)
    kinds = {type(e) for e in errs}
    assert errors.NonPositiveDecay in kinds
    assert errors.BadPropagationSign in kinds
    assert errors.NonPositiveCoupling in kinds
    assert errors.NegativeDopplerWidth in kinds
    # gamma_1, gamma_2, alpha_1, omega_1, phi, v_doppler, length_L
    assert len(errs) == 7


def test_validate_raises_aggregate_with_violations():
    with pytest.raises(errors.ConfigurationError) as exc:
        validate(SystemParams(gamma_3=-1.0, alpha_2=0.0), MediumParams())
    assert len(exc.value.violations) == 2
    assert "gamma_3" in str(exc.value)
    assert "alpha_2" in str(exc.value)


def test_zero_couplings_are_legal():
    # omega_i = 0 switches a field off; that is a physical configuration
    validate(SystemParams(omega_1=0.0, omega_3=0.0), MediumParams())


def test_derived_couplings_scaling():
    med = MediumParams(density_coupling=0.8, dipole_ratio=5.3e-5)
    k = derived_couplings(med)
    assert k["kappa_e"] == pytest.approx(0.8)
    assert k["kappa_x"] == pytest.approx(0.8 * 5.3e-5)
    assert k["kappa_m"] == pytest.approx(0.8 * 5.3e-5 ** 2)


def test_dict_round_trip():
    cfg = validate(SystemParams(omega_3=1.5, phi=1.1),
                   MediumParams(v_doppler=0.3))
    doc = to_dict(cfg)
    again = from_dict(doc)
    assert again == cfg
    assert set(doc) == {"system", "medium"}


def test_unknown_keys_are_hard_errors():
    doc = to_dict(validate(SystemParams(), MediumParams()))
    doc["system"]["omega_4"] = 1.0
    with pytest.raises(errors.ConfigurationError, match="omega_4"):
        from_dict(doc)
    with pytest.raises(errors.ConfigurationError, match="extra"):
        from_dict({"system": {}, "medium": {}, "extra": {}})


def test_loads_parses_json():
    cfg = loads(json.dumps({"system": {"omega_2": 4.0}, "medium": {}}))
    assert cfg.system.omega_2 == 4.0
    assert cfg.system.omega_1 == 0.1  # untouched default


def test_load_config_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(
        {"system": {"delta_p": 0.25}, "medium": {"v_doppler": 1.5}}))
    cfg = load_config(path)
    assert cfg.system.delta_p == 0.25
    assert cfg.medium.v_doppler == 1.5


def test_with_overrides_revalidates():
    cfg = validate(SystemParams(), MediumParams())
    c2 = with_overrides(cfg, system={"omega_3": 5.0},
                        medium={"density_coupling": 2.0})
    assert c2.system.omega_3 == 5.0
    assert c2.medium.density_coupling == 2.0
    assert cfg.system.omega_3 == 0.7  # original untouched
    with pytest.raises(errors.ConfigurationError):
        with_overrides(cfg, system={"gamma_1": -1.0})


def test_phi_default_is_quarter_turn():
    assert SystemParams().phi == pytest.approx(math.pi / 2)
