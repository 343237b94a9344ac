import logging

import pytest


@pytest.fixture(autouse=True)
def restore_root_logger(monkeypatch):
    # main() reconfigures the root logger
    monkeypatch.delenv('SPECSENSE_LOG', raising=False)
    monkeypatch.delenv('SPECSENSE_WORKERS', raising=False)
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield
    root.setLevel(level)
    root.handlers[:] = handlers


@pytest.fixture
def write_config(tmp_path):
    def write(text: str, name: str = 'experiment.toml'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path

    return write
