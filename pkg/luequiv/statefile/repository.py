import logging
from pathlib import Path

import orjson
from pydantic import BaseModel, TypeAdapter, ValidationError

from luequiv.bloch.models import BlochTensor2, BlochTensor3, DensityMatrix
from luequiv.equivalence.models import LocalUnitaryWitness
from luequiv.errors import StateFileError
from luequiv.statefile.models import AnyFile, LoadedState, WitnessFile, state_file_for

logger = logging.getLogger(__name__)

_any_file: TypeAdapter[AnyFile] = TypeAdapter(AnyFile)


def dump_json(model: BaseModel) -> bytes:
    return orjson.dumps(model.model_dump(mode="json"), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS)


class StateFileRepository:
    """Reads and writes state and witness files below one directory."""

    def __init__(self, directory: Path):
        self.directory = directory

    def _path(self, name: str | Path) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.directory / path

    def _parse(self, path: Path) -> AnyFile:
        try:
            raw = orjson.loads(path.read_bytes())
        except OSError as exc:
            raise StateFileError(f"Cannot read {path}: {exc.strerror}") from exc
        except orjson.JSONDecodeError as exc:
            raise StateFileError(f"{path} is not valid JSON: {exc}") from exc
        try:
            return _any_file.validate_python(raw)
        except ValidationError as exc:
            messages = "; ".join(
                f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in exc.errors()
            )
            raise StateFileError(f"{path} is not a state file: {messages}") from exc

    def read_state(self, name: str | Path) -> LoadedState:
        path = self._path(name)
        parsed = self._parse(path)
        if isinstance(parsed, WitnessFile):
            raise StateFileError(f"{path} holds a witness, not a state")
        return LoadedState.from_file(path.name, parsed)

    def read_witness(self, name: str | Path) -> LocalUnitaryWitness:
        path = self._path(name)
        parsed = self._parse(path)
        if not isinstance(parsed, WitnessFile):
            raise StateFileError(f"{path} holds a {parsed.kind} state, not a witness")
        return parsed.witness

    def list_states(self) -> list[LoadedState]:
        """Every state file in the directory, ordered by file name. Witness files are skipped."""
        if not self.directory.is_dir():
            raise StateFileError(f"{self.directory} is not a directory")
        states = []
        for path in sorted(self.directory.glob("*.json")):
            parsed = self._parse(path)
            if isinstance(parsed, WitnessFile):
                logger.info("Skipping witness file %s", path.name)
                continue
            states.append(LoadedState.from_file(path.name, parsed))
        return states

    def write_state(self, name: str | Path, state: DensityMatrix | BlochTensor2 | BlochTensor3) -> Path:
        path = self._path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(dump_json(state_file_for(state)))
        return path

    def write_witness(self, name: str | Path, witness: LocalUnitaryWitness) -> Path:
        path = self._path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(dump_json(WitnessFile(witness=witness)))
        return path
