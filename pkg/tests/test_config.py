import io
import json
import math

import pytest
from pydantic import ValidationError

from hypershift.data.artifact_writer import FileArtifactWriter, StreamArtifactWriter, format_csv, format_json
from hypershift.utils import config_reader
from hypershift.utils.cli_parser import parse_float_list, parse_number
from hypershift.utils.enum_class import Defaults
from hypershift.utils.exceptions import InvalidParams
from hypershift.utils.hash_utils import config_fingerprint
from hypershift.utils.schemas import RunConfig


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    path = tmp_path / 'hypershift.json'
    monkeypatch.setattr(config_reader, 'CONFIG_FILE_NAME', str(path))
    return path


class TestConfigReader:
    def test_missing_file(self, config_file):
        assert config_reader.read_config() is None
        assert config_reader.get_sweep_config() is None

    def test_sections(self, config_file):
        config_file.write_text(json.dumps({'sweep': {'grid': [0.01, 0.1], 'burn': 5000}, 'refine': {'modes': 16}}))
        assert config_reader.get_sweep_config()['burn'] == 5000
        assert config_reader.get_refine_config() == {'modes': 16}
        assert config_reader.get_tolerance_config() is None

    def test_relative_name(self, monkeypatch):
        monkeypatch.setattr(config_reader, 'CONFIG_FILE_NAME', 'hypershift.json')
        assert config_reader.config_file_path().endswith('hypershift.json')
        assert config_reader.config_file_path() != 'hypershift.json'

    def test_env_overrides(self, monkeypatch):
        monkeypatch.delenv('HYPERSHIFT_JOBS', raising=False)
        monkeypatch.delenv('HYPERSHIFT_BURN', raising=False)
        assert config_reader.get_jobs(0) == 1
        assert config_reader.get_burn(None) is None
        monkeypatch.setenv('HYPERSHIFT_JOBS', '3')
        monkeypatch.setenv('HYPERSHIFT_BURN', '2000')
        assert config_reader.get_jobs(1) == 3
        assert config_reader.get_burn(100) == 2000

    def test_log_level(self, monkeypatch):
        monkeypatch.setenv('HYPERSHIFT_LOG_LEVEL', 'debug')
        assert config_reader.get_log_level() == 'DEBUG'


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig(subcommand='curve')
        assert cfg.params.k == (0.05, 1.0, 1.0, 1.0)
        assert cfg.format == 'json'
        assert cfg.grid == Defaults.SWEEP_GRID

    def test_inadmissible_k(self):
        with pytest.raises(InvalidParams):
            RunConfig(subcommand='curve', k=(-0.5, 1.0, 1.0, 1.0))

    @pytest.mark.parametrize('field, value', [('iters', -1), ('jobs', 0), ('format', 'xml'), ('tol', 0.0)])
    def test_field_bounds(self, field, value):
        with pytest.raises(ValidationError):
            RunConfig(subcommand='curve', **{field: value})

    def test_burn_defaults_to_settling(self):
        assert RunConfig(subcommand='sweep').burn is None
        assert RunConfig(subcommand='sweep', burn=10).burn == 10
        with pytest.raises(ValidationError):
            RunConfig(subcommand='sweep', burn=-1)

    def test_fingerprint(self):
        cfg = RunConfig(subcommand='sweep', seed=1)
        assert config_fingerprint(cfg) == config_fingerprint(cfg.model_copy(update={'out': 'elsewhere'}))
        assert config_fingerprint(cfg) != config_fingerprint(RunConfig(subcommand='sweep', seed=2))
        assert len(config_fingerprint(cfg)) == 12


class TestParser:
    def test_rationals(self):
        assert parse_number('1/4') == 0.25
        assert parse_number(' -1/10 ') == pytest.approx(-0.1)
        assert parse_float_list('-1/10,1,1,1', 4) == pytest.approx((-0.1, 1.0, 1.0, 1.0))

    def test_length(self):
        with pytest.raises(ValueError):
            parse_float_list('1,2,3', 4)


class TestArtifactWriter:
    def test_csv_header(self):
        text = format_csv(('a', 'b'), [[1, 0.5], [True, math.nan]], {'schema': 1, 'seed': None})
        assert text.splitlines() == ['# schema=1', '# seed=', 'a,b', '1,0.5', 'true,nan']

    def test_json(self):
        text = format_json({'b': math.nan, 'a': (1, 2)})
        assert json.loads(text) == {'a': [1, 2], 'b': None}
        assert text.index('"a"') < text.index('"b"')

    def test_file_writer_creates_directories(self, tmp_path):
        writer = FileArtifactWriter(str(tmp_path))
        writer.write_string('nested/dir/out.txt', 'hello')
        assert (tmp_path / 'nested' / 'dir' / 'out.txt').read_text() == 'hello'
        writer.write_csv('table.csv', ('x',), [[1.25]])
        assert (tmp_path / 'table.csv').read_text() == 'x\n1.25\n'

    def test_stream_writer(self):
        stream = io.StringIO()
        StreamArtifactWriter(stream).write_json('ignored', {'k': 1})
        assert json.loads(stream.getvalue()) == {'k': 1}
