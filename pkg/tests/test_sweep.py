"""
Test suite for sweep specifications, row evaluation and CSV/JSON emission.
"""

import io
import json
import math
import os

import pytest

from cavity.errors import AllRowsFailed, EmptySweep, InvalidSweep, SingularSeparation, SinkWriteFailure
from cavity.forces import total_force
from cavity.geometry import CavityConfig, WingSide, validate
from cavity.kernel import classical_casimir_pressure, specific_force
from sweeps import sweep as sweep_module
from sweeps.emit import emit_csv, emit_json, format_number, render_csv, render_json, write_text
from sweeps.sweep import (
    SweepResult,
    SweepRow,
    SweepSpec,
    SweptQuantity,
    build_metadata,
    evaluate_row,
    run_sweep,
    sweep_values,
)

BOTH = (WingSide.RIGHT, WingSide.LEFT)


def profile_spec(config, values=(0.0, 0.5, 1.0), sides=BOTH):
    return SweepSpec(swept=SweptQuantity.r, values=values, base=config,
                     outputs=('p_x', 'p_z', 'p_classical'), sides=sides, relative=True)


def test_outputs_are_normalized(parallel_plates):
    """Test that outputs follow the fixed column order."""
    spec = SweepSpec(swept=SweptQuantity.r, values=[0.0, 1e-6], base=parallel_plates,
                     outputs=('p_classical', 'p_z', 'p_x'))

    assert spec.outputs == ('p_x', 'p_z', 'p_classical')
    assert spec.values == (0.0, 1e-6)
    assert spec.columns == ['p_x_right', 'p_z_right', 'p_classical']


def test_columns_both_sides(parallel_plates):
    """Test sided column names."""
    spec = profile_spec(parallel_plates)
    assert spec.columns == ['p_x_right', 'p_x_left', 'p_z_right', 'p_z_left', 'p_classical']


def test_columns_per_wing(trapezoid):
    """Test per-wing force columns."""
    spec = SweepSpec(swept=SweptQuantity.R, values=[1e-9], base=trapezoid,
                     outputs=('ratio', 'f_x'), per_wing=True)
    assert spec.columns == ['f_x_right', 'f_x_left', 'f_x', 'ratio']

    plain = SweepSpec(swept=SweptQuantity.R, values=[1e-9], base=trapezoid,
                      outputs=('f_x', 'torque'))
    assert plain.columns == ['f_x', 'torque']


@pytest.mark.parametrize("changes, error", [
    ({'outputs': ('f_y',)}, InvalidSweep),
    ({'outputs': ()}, EmptySweep),
    ({'values': ()}, EmptySweep),
    ({'values': (2e-9, 1e-9)}, InvalidSweep),
    ({'values': (1e-9, 1e-9)}, InvalidSweep),
    ({'values': (1e-9, float('inf'))}, InvalidSweep),
    ({'outputs': ('p_x',)}, InvalidSweep),
    ({'relative': True}, InvalidSweep),
    ({'values': (-1e-9, 1e-9)}, InvalidSweep),
])
def test_invalid_force_sweeps(trapezoid, changes, error):
    """Test rejection of malformed R sweeps."""
    arguments = dict(swept=SweptQuantity.R, values=(1e-9, 2e-9), base=trapezoid,
                     outputs=('f_x',))
    arguments.update(changes)
    with pytest.raises(error):
        SweepSpec(**arguments)


def test_invalid_profile_sweeps(parallel_plates):
    """Test rejection of malformed r sweeps."""
    with pytest.raises(InvalidSweep):
        SweepSpec(swept=SweptQuantity.r, values=(0.0,), base=parallel_plates,
                  outputs=('f_x',))
    with pytest.raises(InvalidSweep):
        SweepSpec(swept=SweptQuantity.r, values=(0.0, 1.5), base=parallel_plates,
                  outputs=('p_x',), relative=True)
    with pytest.raises(InvalidSweep):
        SweepSpec(swept=SweptQuantity.r, values=(0.0,), base=parallel_plates,
                  outputs=('p_x',), sides=())
    with pytest.raises(InvalidSweep):
        SweepSpec(swept=SweptQuantity.r, values=(0.0,), base=parallel_plates,
                  outputs=('p_x',), dx_ratio=0.5)


def test_invalid_angle_reports_cause():
    """Test that an inadmissible angle names the underlying error."""
    base = CavityConfig(a=4e-10, R=4e-10, dx=4e-9)
    with pytest.raises(InvalidSweep) as excinfo:
        SweepSpec(swept=SweptQuantity.phi, values=(0.0, 0.5), base=base, outputs=('f_x',))

    assert excinfo.value.details['cause'] == 'AngleOutOfRange'
    assert excinfo.value.details['value'] == 0.5


def test_config_at():
    """Test the per-row configurations of each swept quantity."""
    base = CavityConfig(a=4e-10, R=2e-9, phi=0.01, dx=1e-10)

    r_sweep = SweepSpec(swept=SweptQuantity.R, values=(1e-9, 4e-9), base=base,
                        outputs=('f_x',), dx_ratio=0.4)
    config = r_sweep.config_at(4e-9)
    assert config.R == 4e-9
    assert config.dx == pytest.approx(1.6e-9)

    kept = SweepSpec(swept=SweptQuantity.R, values=(1e-9,), base=base, outputs=('f_x',))
    assert kept.config_at(1e-9).dx == 1e-10

    dx_sweep = SweepSpec(swept=SweptQuantity.dx, values=(0.0, 0.5), base=base,
                         outputs=('f_x',), relative=True)
    assert dx_sweep.config_at(0.5).dx == pytest.approx(1e-9)

    phi_sweep = SweepSpec(swept=SweptQuantity.phi, values=(0.0, 0.02), base=base,
                          outputs=('f_x',))
    assert phi_sweep.config_at(0.02).phi == 0.02


def test_profile_rows(parallel_plates):
    """Test that profile rows hold the local pressures."""
    result = run_sweep(profile_spec(parallel_plates))

    assert result.columns == ['swept_value', 'p_x_right', 'p_x_left', 'p_z_right',
                              'p_z_left', 'p_classical']
    assert [row.value for row in result.rows] == [0.0, 0.5, 1.0]
    middle = result.rows[1]
    expected = specific_force(parallel_plates, 0.5 * parallel_plates.R, WingSide.LEFT)
    assert middle.values['p_z_left'] == expected.p_z
    assert middle.values['p_classical'] == classical_casimir_pressure(parallel_plates.a)
    assert not result.failed_rows


def test_force_rows(trapezoid):
    """Test that force rows hold totals, per-wing parts and derived outputs."""
    spec = SweepSpec(swept=SweptQuantity.R, values=(trapezoid.R,), base=trapezoid,
                     outputs=('f_x', 'f_z', 'ratio', 'w_x', 'torque'), per_wing=True)
    row = run_sweep(spec).rows[0]
    total = total_force(trapezoid)

    assert row.values['f_x'] == total.f_x_total
    assert row.values['f_x_right'] == total.per_wing[0].f_x
    assert row.values['f_z_left'] == total.per_wing[1].f_z
    assert row.values['ratio'] == total.f_x_total / total.f_z_total
    assert row.values['w_x'] == abs(total.f_x_total) / trapezoid.R
    assert row.values['torque'] == total.torque_y
    assert row.quadrature_error > 0


def test_failed_row_is_recorded(parallel_plates, monkeypatch):
    """Test that a failing row keeps its error code and the sweep goes on."""
    real = sweep_module.specific_force

    def failing(config, r, side):
        if r > config.R / 2:
            raise SingularSeparation("forced failure", r=r)
        return real(config, r, side)

    monkeypatch.setattr(sweep_module, 'specific_force', failing)
    result = run_sweep(profile_spec(parallel_plates))

    assert result.columns[-1] == 'error'
    assert [row.failed for row in result.rows] == [False, False, True]
    failed = result.failed_rows[0]
    assert failed.error == 'SingularSeparation'
    assert failed.message == 'forced failure'
    assert all(value is None for value in failed.values.values())

    # CSV keeps the row with nan values and no error column
    lines = render_csv(result).splitlines()
    assert lines[0] == ','.join(result.columns[:-1])
    assert lines[3].startswith('1.0000000000000000e+00,nan,')
    assert not any(line.endswith(',') for line in lines)
    assert len({line.count(',') for line in lines}) == 1

    document = json.loads(render_json(result))
    assert document['rows'][2]['error'] == 'SingularSeparation'
    assert document['rows'][2]['message'] == 'forced failure'


def test_all_rows_failed(parallel_plates, monkeypatch):
    """Test that a sweep without any good row is an error."""
    def failing(config, r, side):
        raise SingularSeparation("forced failure")

    monkeypatch.setattr(sweep_module, 'specific_force', failing)
    with pytest.raises(AllRowsFailed) as excinfo:
        run_sweep(profile_spec(parallel_plates))

    assert excinfo.value.details['codes'] == ['SingularSeparation']


def test_evaluate_row_direct(parallel_plates):
    """Test one row outside run_sweep."""
    row = evaluate_row(profile_spec(parallel_plates, sides=(WingSide.RIGHT,)), 0.25)
    assert set(row.values) == {'p_x_right', 'p_z_right', 'p_classical'}
    assert row.error is None


@pytest.mark.integration
def test_workers_do_not_change_output(parallel_plates):
    """Test that worker processes give byte-identical output."""
    spec = profile_spec(parallel_plates, values=tuple(sweep_values(0.0, 1.0, 9)))
    serial = run_sweep(spec, workers=1)
    parallel = run_sweep(spec, workers=2)

    assert render_csv(serial) == render_csv(parallel)
    assert render_json(serial) == render_json(parallel)


def test_metadata(trapezoid):
    """Test the run description echoed into JSON output."""
    spec = SweepSpec(swept=SweptQuantity.R, values=(1e-9,), base=trapezoid,
                     outputs=('f_x',), dx_ratio=0.05, figure_tag='fig6a')
    metadata = build_metadata(spec)

    assert metadata['tool'] == 'casimir-expulsion'
    assert metadata['figure_tag'] == 'fig6a'
    assert metadata['swept'] == 'R'
    assert metadata['dx_ratio'] == 0.05
    assert metadata['config']['phi_deg'] == pytest.approx(1.0)
    assert metadata['apex_cutoff'] is None
    assert set(metadata['constants']) == {'hbar', 'c'}
    # the tag is metadata, not part of the sweep description
    assert 'figure_tag' not in spec.to_dict()


def test_sweep_values():
    """Test linear and logarithmic grids."""
    assert sweep_values(0.0, 1.0, 5) == [0.0, 0.25, 0.5, 0.75, 1.0]
    log = sweep_values(1e-10, 1e-8, 3, log=True)
    assert log[0] == pytest.approx(1e-10)
    assert log[1] == pytest.approx(1e-9)
    assert log[2] == pytest.approx(1e-8)
    assert all(isinstance(v, float) for v in log)


def test_render_csv(parallel_plates):
    """Test the CSV layout."""
    result = run_sweep(profile_spec(parallel_plates, sides=(WingSide.RIGHT,)))
    text = render_csv(result)

    assert text.endswith('\n') and '\r' not in text
    lines = text.split('\n')[:-1]
    assert lines[0] == 'swept_value,p_x_right,p_z_right,p_classical'
    assert len(lines) == 4
    fields = lines[2].split(',')
    assert fields[0] == '5.0000000000000000e-01'
    assert float(fields[2]) == result.rows[1].values['p_z_right']


def test_format_number():
    """Test the round-trip number format."""
    assert format_number(None) == 'nan'
    assert format_number(0.1) == '1.0000000000000001e-01'
    assert float(format_number(math.pi)) == math.pi


def test_render_json(parallel_plates):
    """Test the JSON layout."""
    result = run_sweep(profile_spec(parallel_plates, sides=(WingSide.RIGHT,)))
    document = json.loads(render_json(result))

    assert document['columns'] == result.columns
    assert document['metadata']['swept'] == 'r'
    assert len(document['rows']) == 3
    assert document['rows'][0]['swept_value'] == 0.0
    assert document['rows'][2]['p_x_right'] == result.rows[2].values['p_x_right']
    assert document['rows'][0]['quadrature_error'] is None


def test_render_json_non_finite(parallel_plates):
    """Test that non-finite numbers become null."""
    spec = profile_spec(parallel_plates, values=(0.5,), sides=(WingSide.RIGHT,))
    row = SweepRow(value=0.5, values={'p_x_right': float('nan'), 'p_z_right': float('inf'),
                                      'p_classical': -1.0})
    document = json.loads(render_json(SweepResult(spec=spec, rows=[row])))

    assert document['rows'][0]['p_x_right'] is None
    assert document['rows'][0]['p_z_right'] is None
    assert document['rows'][0]['p_classical'] == -1.0


def test_emit_to_file_is_deterministic(parallel_plates, output_dir):
    """Test atomic file output and byte-identical reruns."""
    spec = profile_spec(parallel_plates)
    first = os.path.join(output_dir, 'first.csv')
    second = os.path.join(output_dir, 'second.csv')

    written = emit_csv(run_sweep(spec), first)
    emit_csv(run_sweep(spec), second)

    with open(first, 'rb') as a, open(second, 'rb') as b:
        data = a.read()
        assert data == b.read()
    assert written == len(data)
    assert not [name for name in os.listdir(output_dir) if name.startswith('.partial-')]

    json_path = os.path.join(output_dir, 'out.json')
    emit_json(run_sweep(spec), json_path)
    with open(json_path, 'r', encoding='utf-8') as handle:
        assert json.load(handle)['metadata']['tool'] == 'casimir-expulsion'


def test_emit_to_stream(parallel_plates):
    """Test writing to an open text stream."""
    stream = io.StringIO()
    result = run_sweep(profile_spec(parallel_plates))
    count = emit_csv(result, stream)

    assert stream.getvalue() == render_csv(result)
    assert count == len(stream.getvalue().encode('utf-8'))


def test_write_failure(output_dir):
    """Test that an unwritable destination raises SinkWriteFailure."""
    missing = os.path.join(output_dir, 'no', 'such', 'dir', 'out.csv')
    with pytest.raises(SinkWriteFailure) as excinfo:
        write_text("x\n", missing)

    assert isinstance(excinfo.value, OSError)
    assert excinfo.value.details['path'] == missing

    closed = io.StringIO()
    closed.close()
    with pytest.raises(SinkWriteFailure):
        write_text("x\n", closed)
