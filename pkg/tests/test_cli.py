import json

import pytest
from click.testing import CliRunner

from nestbuilder.cli import bench, cli, generate, render, run, safe_cli, verify, version
from nestbuilder.errors import NotConnected
from nestbuilder.fixtures import fixture
from nestbuilder.instances import gen_line, load_instance, save_instance, serialize_instance
from nestbuilder.version import VERSION


def json_output(result):
    return json.loads(
        next(line for line in result.output.splitlines() if line.startswith('{')))


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def line_file(tmpdir):
    path = str(tmpdir / 'line.txt')
    save_instance(gen_line(4), path)
    return path


def test_version(runner):
    result = runner.invoke(version)

    assert result.exit_code == 0
    assert result.output == VERSION + '\n'


def test_group(runner):
    result = runner.invoke(cli, ['--debug', 'version'])

    assert result.exit_code == 0
    assert result.output.endswith(VERSION + '\n')


def test_run(runner, line_file, tmpdir):
    trace_path = str(tmpdir / 'line.jsonl')
    result = runner.invoke(run, [line_file, '--trace', trace_path, '--json'])

    assert result.exit_code == 0
    summary = json_output(result)
    assert list(summary) == [
        'z', 's', 'steps', 'sensing_steps', 'iterations', 'nest_ok',
        'invariant_violations', 'trace_hash'
    ]
    assert summary['z'] == 4
    assert summary['iterations'] == 2
    assert summary['nest_ok'] is True
    assert summary['invariant_violations'] == 0
    assert len(summary['trace_hash']) == 64

    again = runner.invoke(run, [line_file, '--json', '--monitors', 'off'])
    assert json_output(again)['trace_hash'] != summary['trace_hash']
    same = runner.invoke(run, [line_file, '--json'])
    assert json_output(same) == summary


def test_run_text_and_sensing_cost(runner, line_file):
    result = runner.invoke(run, [line_file, '--sensing-cost', '1'])

    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert 'nest_ok: true' in lines
    sensing = [line for line in lines if line.startswith('sensing_steps: ')]
    assert int(sensing[0].split(': ')[1]) > 0


def test_run_disconnected(runner, tmpdir):
    path = str(tmpdir / 'bad.txt')
    with open(path, 'w') as f:
        f.write('#.S\n')
    result = runner.invoke(run, [path])

    assert result.exit_code == 1
    assert isinstance(result.exception, NotConnected)


def test_verify(runner, line_file, tmpdir):
    trace_path = str(tmpdir / 'line.jsonl')
    runner.invoke(run, [line_file, '--trace', trace_path])
    result = runner.invoke(verify, [line_file, trace_path])

    assert result.exit_code == 0
    assert 'violations: 0' in result.output.splitlines()

    with open(trace_path) as f:
        lines = f.readlines()
    with open(trace_path, 'w') as f:
        f.writelines(lines[:-1])
    result = runner.invoke(verify, [line_file, trace_path, '--json'])

    assert result.exit_code == 1
    summary = json_output(result)
    assert summary['truncated'] is True
    assert summary['first_violations'][0]['index'] == len(lines) - 1


def test_generate(runner, tmpdir):
    result = runner.invoke(generate, ['fixture', '--name', 'plus'])
    assert result.exit_code == 0
    assert result.output == serialize_instance(fixture('plus'))

    path = str(tmpdir / 'random.txt')
    result = runner.invoke(
        generate, ['random', '--z', '20', '--seed', '3', '-o', path])
    assert result.exit_code == 0
    assert result.output == ''
    spec = load_instance(path)
    assert len(spec.field) == 20
    assert spec.seed == 3

    result = runner.invoke(
        generate, ['rough-rectangle', '--z', '400', '--s-prime', '250'])
    assert result.exit_code == 0
    assert '# s_prime: 250' in result.output

    result = runner.invoke(generate, ['line', '--z', '3'])
    assert result.output.endswith('S##\n')


def test_generate_fixture_needs_a_name(runner):
    result = runner.invoke(generate, ['fixture'])

    assert result.exit_code == 2
    assert 'fixture needs --name' in result.output


def test_bench(runner, tmpdir):
    manifest = str(tmpdir / 'bench.txt')
    with open(manifest, 'w') as f:
        f.write('fixture name=plus,line-4\n')
    output = str(tmpdir / 'table.csv')
    result = runner.invoke(bench, [manifest, '-o', output, '--workers', '1'])

    assert result.exit_code == 0
    with open(output) as f:
        lines = f.read().splitlines()
    assert lines[0] == 'family,label,z,s,steps,ratio,nest_ok'
    assert lines[1].startswith('fixture,plus,5,2,0,')
    assert lines[2].startswith('fixture,line-4,4,3,')
    assert lines[3].startswith('# summary family=fixture cases=2')

    result = runner.invoke(bench, [manifest, '--delimiter', '\t'])
    assert result.output.splitlines()[0].split('\t')[0] == 'family'


def test_render(runner, line_file, tmpdir):
    trace_path = str(tmpdir / 'line.jsonl')
    runner.invoke(run, [line_file, '--trace', trace_path])
    outdir = str(tmpdir / 'frames')
    result = runner.invoke(
        render, [trace_path, outdir, '--every', '1000000', '--format', 'svg'])

    assert result.exit_code == 0
    assert result.output == '2 frames\n'
    assert sorted(p.basename for p in tmpdir.join('frames').listdir()) == [
        'frame_0000.svg', 'frame_0001.svg'
    ]


def test_safe_cli_exit_codes(mocker, tmpdir, capsys):
    path = str(tmpdir / 'bad.txt')
    with open(path, 'w') as f:
        f.write('#.S\n')
    mocker.patch('sys.argv', ['nestbuilder', 'run', path])
    with pytest.raises(SystemExit) as error:
        safe_cli()
    assert error.value.code == 2
    assert '[NotConnected]' in capsys.readouterr().err

    mocker.patch(
        'sys.argv',
        ['nestbuilder', 'render',
         str(tmpdir / 'missing.jsonl'),
         str(tmpdir)])
    with pytest.raises(SystemExit) as error:
        safe_cli()
    assert error.value.code == 1
