"""Shared generators and invariant checks for the test modules."""

from sentlang.tokenizer import COLON, ROOT, SIGN, WORD, Token

from oracle import fold

EXTRA_LETTERS = "abcdefghijklmnopqrstuvwxyzßñçäöüéèàíóú"
NON_WORDS = ["1234", ",", "3.5", "!", "«"]


def tok(surface, kind=WORD, offset=0):
    return Token(surface, fold(surface), offset, kind)


def random_tokens(rng, vocab, n):
    """Mix of lexicon words (some upper-cased), random letter strings, signs and non-words."""
    out = []
    for _ in range(n):
        r = rng.random()
        if r < 0.55:
            surface = rng.choice(vocab)
            out.append(tok(surface.upper() if rng.random() < 0.1 else surface))
        elif r < 0.75:
            out.append(tok("".join(rng.choice(EXTRA_LETTERS) for _ in range(rng.randint(1, 8)))))
        elif r < 0.85:
            out.append(tok(rng.choice("¿¡"), SIGN))
        else:
            out.append(tok(rng.choice(NON_WORDS), "other"))
    return out


def check_coverage(sentence, tree, offset=0):
    """Every non-space character is in exactly one token or is a segment delimiter."""
    owner = set()
    delimiters = set()
    for node in tree.walk():
        for t in node.own_tokens:
            assert t.surface and not any(c.isspace() for c in t.surface)
            assert sentence[t.offset - offset:t.end - offset] == t.surface
            for i in range(t.offset - offset, t.end - offset):
                assert i not in owner, "character in two tokens"
                owner.add(i)
        if node.kind == COLON:
            delimiters.add(node.span[0] - offset)
        elif node.kind != ROOT:
            delimiters.update((node.span[0] - offset, node.span[1] - 1 - offset))
    for i, c in enumerate(sentence):
        if not c.isspace():
            assert (i in owner) != (i in delimiters), (i, c)
    return True


def check_well_formed(tree):
    """Child spans nest inside their parent, in order, and own no parent tokens."""
    for node in tree.walk():
        prev = node.span[0]
        for child in node.children:
            assert node.span[0] <= child.span[0] < child.span[1] <= node.span[1]
            assert child.span[0] >= prev
            prev = child.span[1]
        for t in node.own_tokens:
            assert all(not (c.span[0] <= t.offset < c.span[1]) for c in node.children)
    return True
