"""Run manifests: resolved inputs plus checksums of every output."""
import hashlib
import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError

from src import __version__
from src.utils.config import MANIFEST_SUFFIX
from src.utils.errors import ConfigError


class RunManifest(BaseModel):
    """Everything needed to reproduce a run byte for byte."""
    command: str = Field(..., description="CLI subcommand")
    request: dict[str, Any] = Field(..., description="Fully resolved run request")
    outputs: list[str] = Field(default_factory=list, description="Output file paths")
    checksums: dict[str, str] = Field(default_factory=dict, description="sha256 per output")
    summary: dict[str, Any] = Field(default_factory=dict, description="Run summary")
    version: str = Field(__version__, description="Package version")


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def manifest_path(output: Path) -> Path:
    return output.with_name(output.name + MANIFEST_SUFFIX)


def build_manifest(
    command: str, request: dict[str, Any], outputs: list[Path], summary: dict[str, Any] | None = None
) -> RunManifest:
    return RunManifest(
        command=command,
        request=request,
        outputs=[str(p) for p in outputs],
        checksums={str(p): sha256_file(p) for p in outputs},
        summary=summary or {},
    )


def write_manifest(manifest: RunManifest, path: Path) -> None:
    text = json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    path.write_text(text, newline="\n")


def read_manifest(path: Path) -> RunManifest:
    with open(path, "r") as f:
        try:
            return RunManifest.model_validate(json.load(f))
        except (json.JSONDecodeError, ValidationError) as e:
            raise ConfigError(f"{path} is not a run manifest: {e}") from e


def mismatched_outputs(manifest: RunManifest) -> list[str]:
    """Outputs whose current checksum differs from the recorded one."""
    return [
        output
        for output, checksum in manifest.checksums.items()
        if not Path(output).exists() or sha256_file(Path(output)) != checksum
    ]
