"""Cross-platform launcher: ensure .venv, install requirements, forward args to the CLI."""

from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path


def _venv_python(venv_dir: Path) -> Path:
    if sys.platform == "win32":
        return venv_dir / "Scripts" / "python.exe"
    return venv_dir / "bin" / "python"


def _needs_install(requirements: Path, stamp: Path) -> bool:
    if not requirements.exists():
        return False
    return not stamp.exists() or requirements.stat().st_mtime > stamp.stat().st_mtime


def main(argv: list[str] | None = None) -> int:
    project_root = Path(__file__).resolve().parent.parent
    venv_dir = project_root / ".venv"
    requirements = project_root / "requirements.txt"
    install_stamp = venv_dir / ".deps-installed"

    if not venv_dir.exists():
        subprocess.check_call([sys.executable, "-m", "venv", str(venv_dir)])

    venv_python = _venv_python(venv_dir)
    if not venv_python.exists():
        raise SystemExit("Virtual environment missing python interpreter.")

    if _needs_install(requirements, install_stamp):
        subprocess.check_call(
            [
                str(venv_python),
                "-m",
                "pip",
                "install",
                "--disable-pip-version-check",
                "-r",
                str(requirements),
            ]
        )
        install_stamp.touch()

    env = os.environ.copy()
    src_path = str(project_root / "src")
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [src_path, env.get("PYTHONPATH")]))
    args = sys.argv[1:] if argv is None else argv
    if not args:
        args = ["verify", "--config", str(project_root / "configs" / "verify.json")]
    return subprocess.call([str(venv_python), str(project_root / "main.py"), *args], env=env)


if __name__ == "__main__":
    sys.exit(main())
