import pytest

from sentlang.lexicon import default_lexicon_root, load_lexicon_set

DATA = default_lexicon_root()
CORPUS = DATA / "corpus" / "desk.tsv"


@pytest.fixture(scope="session")
def lex():
    return load_lexicon_set(DATA, ["fr", "en", "es", "de"])


@pytest.fixture
def make_root(tmp_path):
    """Write a small lexicon root: ``make_root({"xx": (words, alphabet)})``."""

    def build(languages):
        for code, (words, alphabet) in languages.items():
            d = tmp_path / code
            d.mkdir(parents=True, exist_ok=True)
            if words is not None:
                (d / "words.txt").write_text(words, encoding="utf-8")
            if alphabet is not None:
                (d / "alphabet.txt").write_text(alphabet, encoding="utf-8")
        return tmp_path

    return build


# One line per acceptance criterion, repeated in the terminal summary so the
# verdicts are visible without ``-s``.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
