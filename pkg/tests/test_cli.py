import orjson
import pytest
from typer.testing import CliRunner

from luequiv.invariants.compare import fingerprints_equal
from luequiv.invariants.fingerprint import fingerprint3
from luequiv.invariants.models import Fingerprint3, FingerprintReport
from luequiv.main import app
from luequiv.statefile.repository import StateFileRepository
from luequiv.statekit.generators import bell_state, random_density

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(arg) for arg in args])


@pytest.fixture
def repository(tmp_path):
    return StateFileRepository(tmp_path)


@pytest.fixture
def bell_file(repository):
    return repository.write_state("bell.json", bell_state())


def test_fingerprint_text(bell_file):
    result = invoke("fingerprint", bell_file)
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "# bell.json: two_qubit, tol=1e-09"
    det_line = next(line for line in lines if line.startswith("det T₁₂"))
    assert det_line.split()[-1] == "-1"
    assert lines[-1].startswith("digest ")


def test_fingerprint_json(bell_file):
    result = invoke("fingerprint", bell_file, "--json")
    assert result.exit_code == 0, result.output
    report = FingerprintReport.model_validate(orjson.loads(result.output))
    assert report.file == "bell.json"
    assert report.fingerprint.dims == (0, 0)
    assert report.fingerprint.det_T12 == pytest.approx(-1.0)
    assert len(report.digest) == 64


def test_fingerprint_three_qubit_state(repository):
    path = repository.write_state("rho.json", random_density(8, 0))
    result = invoke("fingerprint", path, "--depth", 1)
    assert result.exit_code == 0, result.output
    assert "three_qubit" in result.output
    assert "depth 1" in result.output


def test_fingerprint_json_three_qubit(repository):
    path = repository.write_state("rho.json", random_density(8, 2))
    result = invoke("fingerprint", path, "--json", "--depth", 1)
    assert result.exit_code == 0, result.output
    report = FingerprintReport.model_validate(orjson.loads(result.output))
    assert isinstance(report.fingerprint, Fingerprint3)
    assert report.depth == 1
    expected = fingerprint3(repository.read_state("rho.json").bloch, depth=1)
    same, certificate = fingerprints_equal(report.fingerprint, expected, tol=1e-12)
    assert same, certificate


def test_fingerprint_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    result = invoke("fingerprint", path)
    assert result.exit_code == 2
    assert "error:" in result.output


def test_fingerprint_unphysical_state(tmp_path):
    content = {
        "kind": "density",
        "dim": 4,
        "re": [[1.5, 0, 0, 0], [0, -0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        "im": [[0] * 4 for _ in range(4)],
    }
    path = tmp_path / "neg.json"
    path.write_bytes(orjson.dumps(content))
    assert invoke("fingerprint", path).exit_code == 3


def test_depth_out_of_range(bell_file):
    assert invoke("fingerprint", bell_file, "--depth", 4).exit_code == 2


def test_equiv_same_file(bell_file):
    result = invoke("equiv", bell_file, bell_file)
    assert result.exit_code == 0
    assert result.output.startswith("Equivalent (path=identical")


def test_equiv_counterexample(tmp_path):
    assert invoke("gen", "--kind", "counterexample", "--seed", 3, "--out", tmp_path).exit_code == 0
    result = invoke("equiv", tmp_path / "state_a.json", tmp_path / "state_b.json")
    assert result.exit_code == 1, result.output
    assert result.output.startswith("NotEquivalent")
    assert "differs in triple_mu" in result.output


def test_equiv_orbit_with_witness(tmp_path):
    assert invoke("gen", "--kind", "orbit", "--seed", 5, "--out", tmp_path).exit_code == 0
    result = invoke("equiv", tmp_path / "state_a.json", tmp_path / "state_b.json", "--witness")
    assert result.exit_code == 0, result.output
    assert "O1 =" in result.output and "U2 =" in result.output
    assert "residual rho" in result.output


def test_equiv_ghz_orbit_is_inconclusive(tmp_path):
    generated = invoke("gen", "--kind", "orbit", "--qubits", 3, "--base", "ghz", "--out", tmp_path)
    assert generated.exit_code == 0, generated.output
    result = invoke("equiv", tmp_path / "state_a.json", tmp_path / "state_b.json")
    assert result.exit_code == 4, result.output
    verdict_line = next(line for line in result.output.splitlines() if line.startswith("Inconclusive"))
    assert verdict_line.endswith("depth=2)")
    assert "reason:" in result.output


def test_equiv_rejects_mixed_kinds(tmp_path, bell_file):
    invoke("gen", "--kind", "counterexample", "--out", tmp_path)
    result = invoke("equiv", bell_file, tmp_path / "state_a.json")
    assert result.exit_code == 2


def test_gen_is_deterministic(tmp_path):
    for name in ("first", "second"):
        assert invoke("gen", "--kind", "orbit", "--seed", 7, "--out", tmp_path / name).exit_code == 0
    for file in ("state_a.json", "state_b.json", "witness.json"):
        assert (tmp_path / "first" / file).read_bytes() == (tmp_path / "second" / file).read_bytes()


def test_gen_orbit_writes_ground_truth_witness(tmp_path):
    invoke("gen", "--kind", "orbit", "--qubits", 3, "--seed", 1, "--out", tmp_path)
    witness = StateFileRepository(tmp_path).read_witness("witness.json")
    assert len(witness.unitaries) == 3
    assert witness.residual <= 1e-12


@pytest.mark.parametrize(
    "args",
    [
        ("--kind", "bell", "--qubits", 3),
        ("--kind", "ghz"),
        ("--kind", "orbit", "--base", "bell", "--qubits", 3),
        ("--kind", "random", "--qubits", 4),
    ],
)
def test_gen_rejects_incompatible_options(tmp_path, args):
    assert invoke("gen", *args, "--out", tmp_path).exit_code == 2


def test_classify_empty_directory(tmp_path):
    result = invoke("classify", tmp_path)
    assert result.exit_code == 0
    assert "no state files" in result.output


def test_classify_groups_orbit(tmp_path):
    invoke("gen", "--kind", "orbit", "--seed", 11, "--out", tmp_path)
    result = invoke("classify", tmp_path)
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0].startswith("# 2 states, 1 classes")
    assert lines[1].startswith("class 1 [2]")
    assert lines[1].endswith("state_a.json state_b.json")


def test_classify_separates_distinct_states(tmp_path):
    invoke("gen", "--kind", "orbit", "--seed", 11, "--out", tmp_path)
    invoke("gen", "--kind", "random", "--seed", 99, "--out", tmp_path)
    result = invoke("classify", tmp_path)
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0].startswith("# 3 states, 2 classes")
    assert lines[1].endswith(": state.json")
    assert lines[2].endswith(": state_a.json state_b.json")


def test_classify_rejects_mixed_kinds(tmp_path):
    invoke("gen", "--kind", "counterexample", "--out", tmp_path)
    StateFileRepository(tmp_path).write_state("rho.json", random_density(4, 0))
    assert invoke("classify", tmp_path).exit_code == 2
