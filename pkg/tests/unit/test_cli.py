"""Tests for CLI module."""

import os
from pathlib import Path
from unittest.mock import Mock, patch

import click
import pytest
from click.testing import CliRunner

from demonsonar.audio import write_wav
from demonsonar.cli import exit_code_for, main, parse_widths
from demonsonar.exceptions import ArtifactIOError, ContractError, ModelFileError
from demonsonar.features import write_feature_table

FAST_OPTIONS = ["--frame-len", "256"]


@pytest.fixture
def feature_csv(temp_dir, blob_table) -> Path:
    return write_feature_table(blob_table, Path(temp_dir) / "features.csv")


@pytest.fixture
def trained_model(temp_dir, feature_csv) -> Path:
    model = Path(temp_dir) / "cascade.txt"
    result = CliRunner().invoke(
        main,
        ["train", str(feature_csv), "--model-out", str(model), "--epochs", "30"],
    )
    assert result.exit_code == 0, result.output
    return model


def _train_config(mock_orchestrator: Mock):
    """CascadeConfig passed to the mocked orchestrator's train call."""
    return mock_orchestrator.return_value.train.call_args[0][1]


class TestCLI:
    """Test cases for CLI commands."""

    def test_main_help(self):
        """Test main command help."""
        # Arrange
        runner = CliRunner()

        # Act
        result = runner.invoke(main, ["--help"])

        # Assert
        assert result.exit_code == 0
        assert "cascaded vessel classification" in result.output
        for command in ("synth", "analyze", "train", "predict", "evaluate", "sweep"):
            assert command in result.output

    def test_main_version(self):
        """Test main command version."""
        result = CliRunner().invoke(main, ["--version"])

        assert result.exit_code == 0
        assert "0.1.0" in result.output

    @pytest.mark.parametrize(
        "command, shown",
        [
            (None, "[default: DEMONSONAR_LOG_LEVEL or INFO]"),
            ("synth", "[default: 40]"),
            ("analyze", "[default: 10.0]"),
            ("train", "[default: 500]"),
            ("predict", "[default: 3.0]"),
            ("evaluate", "[default: csv]"),
            ("sweep", "[default: 12,16,20,28]"),
        ],
    )
    def test_help_lists_every_option_default(self, command, shown):
        """Test each help page names every valued option with its default."""
        # Arrange
        target = main if command is None else main.commands[command]
        args = ["--help"] if command is None else [command, "--help"]
        valued = [
            param
            for param in target.params
            if isinstance(param, click.Option)
            and not param.is_flag
            and not param.required
        ]

        # Act
        result = CliRunner().invoke(main, args)

        # Assert
        assert result.exit_code == 0
        text = " ".join(result.output.split())
        assert shown in text
        for param in valued:
            assert param.opts[0] in text
        assert text.count("default:") >= len(valued)

    def test_invalid_log_level(self):
        result = CliRunner().invoke(main, ["--log-level", "LOUD", "synth", "--help"])

        assert result.exit_code == 2

    def test_synth(self, temp_dir):
        """Test synth writes recordings and prints the manifest path."""
        # Arrange
        out_dir = Path(temp_dir) / "data"
        args = ["synth", "--out", str(out_dir), "--classes", "2", "--per-class", "2"]
        args += ["--duration", "0.5", "--sample-rate", "4000"]

        # Act
        result = CliRunner().invoke(main, args)

        # Assert
        assert result.exit_code == 0, result.output
        assert str(out_dir / "manifest.csv") in result.output
        assert len(list(out_dir.glob("*.wav"))) == 4

    def test_analyze(self, temp_dir, make_vessel):
        # Arrange
        wav = Path(temp_dir) / "rec.wav"
        write_wav(make_vessel(duration_s=3.0), wav)
        prefix = Path(temp_dir) / "rec"

        # Act
        result = CliRunner().invoke(
            main,
            ["analyze", str(wav), "--out", str(prefix), "--slice", "1.5"]
            + FAST_OPTIONS,
        )

        # Assert
        assert result.exit_code == 0, result.output
        assert str(Path(temp_dir) / "rec_gram.pgm") in result.output
        assert str(Path(temp_dir) / "rec_peaks.csv") in result.output
        assert (Path(temp_dir) / "rec_features.csv").exists()

    def test_analyze_missing_wav_exits_with_io_code(self, temp_dir):
        """Test an unreadable input maps to exit code 3."""
        result = CliRunner().invoke(
            main, ["analyze", str(Path(temp_dir) / "absent.wav"), "--out", "x"]
        )

        assert result.exit_code == 3

    def test_train_empty_manifest_exits_with_contract_code(self, temp_dir):
        """Test a manifest without rows maps to exit code 2."""
        manifest = Path(temp_dir) / "empty.csv"
        manifest.write_text("path,label_coarse,label_fine\n")

        result = CliRunner().invoke(
            main, ["train", str(manifest), "--model-out", str(Path(temp_dir) / "m")]
        )

        assert result.exit_code == 2

    def test_train_invalid_config_exits_with_contract_code(self, feature_csv):
        result = CliRunner().invoke(
            main,
            ["train", str(feature_csv), "--model-out", "m.txt", "--split-ratio", "1"],
        )

        assert result.exit_code == 2

    def test_predict_feature_table(self, feature_csv, trained_model):
        """Test one prediction line per row with the fine label only for class 1."""
        # Act
        result = CliRunner().invoke(
            main, ["predict", str(trained_model), str(feature_csv)]
        )

        # Assert
        assert result.exit_code == 0, result.output
        lines = [line for line in result.output.splitlines() if ".wav coarse=" in line]
        assert len(lines) == 200
        assert lines[0].startswith("c0_0000.wav coarse=")
        for line in lines:
            fine_missing = line.endswith("fine=-")
            assert fine_missing == (" coarse=1 " not in line)

    def test_predict_corrupt_model(self, temp_dir, feature_csv):
        model = Path(temp_dir) / "bad.txt"
        model.write_text("not a model")

        result = CliRunner().invoke(main, ["predict", str(model), str(feature_csv)])

        assert result.exit_code == 2

    def test_evaluate(self, temp_dir, feature_csv, trained_model):
        # Arrange
        prefix = Path(temp_dir) / "eval"
        args = ["evaluate", str(trained_model), str(feature_csv)]
        args += ["--report", str(prefix), "--format", "csv", "--format", "json"]

        # Act
        result = CliRunner().invoke(main, args)

        # Assert
        assert result.exit_code == 0, result.output
        assert "coarse_accuracy=" in result.output
        assert "fine_routed_accuracy=" in result.output
        assert any(Path(temp_dir).glob("eval*.json"))

    def test_sweep_rejects_bad_widths(self, feature_csv):
        result = CliRunner().invoke(
            main, ["sweep", str(feature_csv), "--report", "r", "--widths", "4,x"]
        )

        assert result.exit_code == 2

    def test_sweep(self, temp_dir, feature_csv):
        prefix = Path(temp_dir) / "widths"
        args = ["sweep", str(feature_csv), "--report", str(prefix)]
        args += ["--widths", "4,8", "--epochs", "10"]

        result = CliRunner().invoke(main, args)

        assert result.exit_code == 0, result.output
        assert "widths_sweep.csv" in result.output


class TestSeedAndConfig:
    """Test seed precedence and config-file defaults."""

    @pytest.mark.parametrize(
        "group_args, command_args, expected",
        [
            ([], [], 0),
            (["--seed", "5"], [], 5),
            (["--seed", "5"], ["--seed", "9"], 9),
        ],
    )
    @patch("demonsonar.cli.DemonSonarOrchestrator")
    def test_seed_flags(self, mock_orchestrator, group_args, command_args, expected):
        # Act
        result = CliRunner().invoke(
            main, group_args + ["train", "f.csv", "--model-out", "m"] + command_args
        )

        # Assert
        assert result.exit_code == 0, result.output
        assert _train_config(mock_orchestrator).train.seed == expected

    @patch.dict(os.environ, {"DEMONSONAR_SEED": "3"})
    @patch("demonsonar.cli.DemonSonarOrchestrator")
    def test_environment_seed(self, mock_orchestrator):
        result = CliRunner().invoke(main, ["train", "f.csv", "--model-out", "m"])

        assert result.exit_code == 0, result.output
        assert _train_config(mock_orchestrator).train.seed == 3

    @patch.dict(os.environ, {"DEMONSONAR_SEED": "3"})
    @patch("demonsonar.cli.DemonSonarOrchestrator")
    def test_config_file_values(self, mock_orchestrator, temp_dir):
        """Test config-file values beat the environment and act as defaults."""
        # Arrange
        config_file = Path(temp_dir) / "demon.conf"
        config_file.write_text("seed=4\nepochs=7\nhidden=12\n")

        # Act
        result = CliRunner().invoke(
            main,
            ["--config", str(config_file), "train", "f.csv", "--model-out", "m"]
            + ["--hidden", "16"],
        )

        # Assert
        assert result.exit_code == 0, result.output
        config = _train_config(mock_orchestrator)
        assert config.train.seed == 4
        assert config.train.epochs == 7
        assert config.train.hidden_width == 16

    @patch("demonsonar.cli.DemonSonarOrchestrator")
    def test_no_refine(self, mock_orchestrator):
        result = CliRunner().invoke(
            main, ["train", "f.csv", "--model-out", "m", "--no-refine"]
        )

        assert result.exit_code == 0, result.output
        assert _train_config(mock_orchestrator).refine_category is None


class TestHelpers:
    """Test cases for CLI helpers."""

    @pytest.mark.parametrize(
        "error, code",
        [
            (ArtifactIOError("x", "denied"), 3),
            (FileNotFoundError("x"), 3),
            (ContractError("bad"), 2),
            (ModelFileError("bad", "version"), 2),
            (ValueError("bad"), 2),
            (RuntimeError("bug"), None),
        ],
    )
    def test_exit_code_for(self, error, code):
        assert exit_code_for(error) == code

    def test_parse_widths(self):
        assert parse_widths("12, 16,20") == (12, 16, 20)
