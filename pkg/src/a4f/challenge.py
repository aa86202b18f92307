"""Secret paragraphs: public/private views, merge of submissions, grading.

A stored model is split textually: the public view is the original source
with each secret paragraph (and its ``//SECRET`` marker) removed
byte-exactly, so a user's formatting survives.  Submissions made through a
public link are re-merged with the stored secrets before analysis, which
keeps secrets effective but never reveals their text.

Challenge identity is by command name, so challenge models should use
named commands; anonymous commands are renumbered when a submission adds
its own and make unreliable challenge ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import SecretNameClashError, UnknownCommandError
from .finder import Budget, DEFAULT_MAX_SCOPE, Instance, solve_command
from .lang import ResolvedModel, SourceModel, parse, resolve


@dataclass
class CommandEntry:
    name: str
    kind: str            # "run" | "check"
    secret: bool

    def wire(self) -> dict:
        return {"name": self.name, "kind": self.kind, "secret": self.secret}


@dataclass
class SecretParagraph:
    kind: str
    name: str
    source: str                       # //SECRET marker line + paragraph text
    declared_names: list[str] = field(default_factory=list)


@dataclass
class SplitModel:
    public_text: str
    secret_paragraphs: list[SecretParagraph]
    command_index: list[CommandEntry]

    @property
    def has_secrets(self) -> bool:
        return bool(self.secret_paragraphs)


@dataclass
class GradeResult:
    command: str
    verdict: str         # solved | counterexample | witness | no-witness |
    #                      error | resource-limit
    instance: Optional[Instance] = None
    message: Optional[str] = None


def _declared_names(p) -> list[str]:
    """Names a paragraph introduces: its own (unless auto-generated),
    plus sig and field names for sig paragraphs."""
    names = []
    if "$" not in p.name:
        names.append(p.name)
    if p.kind == "sig":
        for d in p.body:
            if d.name not in names:
                names.append(d.name)
            for f in d.fields:
                names.append(f.name)
    return names


def split(model: SourceModel) -> SplitModel:
    """Public view + retained secrets + the full command index."""
    removed: list[tuple[int, int]] = []
    secrets: list[SecretParagraph] = []
    commands: list[CommandEntry] = []
    for p in model.paragraphs:
        if p.kind in ("run", "check"):
            commands.append(CommandEntry(p.name, p.kind, p.secret))
        if p.secret:
            if p.marker_span:
                removed.append(p.marker_span)
            removed.append(p.span)
            secrets.append(SecretParagraph(
                kind=p.kind, name=p.name,
                source=model.paragraph_source(p),
                declared_names=_declared_names(p)))
    removed.sort()
    parts = []
    pos = 0
    for start, end in removed:
        parts.append(model.text[pos:start])
        pos = end
    parts.append(model.text[pos:])
    return SplitModel(public_text="".join(parts), secret_paragraphs=secrets,
                      command_index=commands)


def merge(secret_paragraphs: list[SecretParagraph],
          submitted_public_text: str) -> tuple[SourceModel, str]:
    """Submitted paragraphs followed by the stored secrets, re-parsed.

    Raises SecretNameClashError when the submission declares a name owned
    by a secret paragraph, and propagates ParseError from the submission.
    """
    submitted = parse(submitted_public_text)
    secret_names = {n for sp in secret_paragraphs for n in sp.declared_names}
    for p in submitted.paragraphs:
        for n in _declared_names(p):
            if n in secret_names:
                raise SecretNameClashError(
                    f"submission redefines the reserved name {n!r}",
                    span=p.span)
    pieces = [submitted_public_text]
    for sp in secret_paragraphs:
        pieces.append("\n" + sp.source)
    merged_text = "".join(pieces)
    return parse(merged_text), merged_text


def command_index(model: SourceModel) -> list[CommandEntry]:
    return [CommandEntry(p.name, p.kind, p.secret)
            for p in model.paragraphs if p.kind in ("run", "check")]


def execute_on_view(stored: Optional[SplitModel], submitted_text: str,
                    command_name: str, skip: int = 0,
                    budget: Optional[Budget] = None,
                    max_scope: int = DEFAULT_MAX_SCOPE) -> GradeResult:
    """Grade one command against a submission.

    ``stored`` is the split of the shared model for public-link access (the
    submission cannot alter secrets); None means the caller holds the
    private link and the submitted text is analyzed as-is.

    Raises ParseError / SecretNameClashError / UnknownCommandError for
    violated preconditions; analysis failures come back as ``error``
    results whose message cites at most names and positions, never secret
    paragraph text.
    """
    if stored is not None:
        model, _merged = merge(stored.secret_paragraphs, submitted_text)
    else:
        model = parse(submitted_text)

    names = {p.name for p in model.paragraphs if p.kind in ("run", "check")}
    if command_name not in names:
        raise UnknownCommandError(f"unknown command {command_name!r}")

    try:
        resolved: ResolvedModel = resolve(model)
    except Exception as e:
        msg = getattr(e, "message", str(e))
        return GradeResult(command=command_name, verdict="error", message=msg)

    cmd = resolved.commands[command_name]
    outcome = solve_command(resolved, command_name, skip=skip, budget=budget,
                            max_scope=max_scope)
    if outcome.status == "limit":
        return GradeResult(command_name, "resource-limit", message=outcome.message)
    if outcome.status == "error":
        return GradeResult(command_name, "error", message=outcome.message)
    if cmd.kind == "check":
        if outcome.is_sat:
            return GradeResult(command_name, "counterexample",
                               instance=outcome.instance)
        return GradeResult(command_name, "solved")
    if outcome.is_sat:
        return GradeResult(command_name, "witness", instance=outcome.instance)
    return GradeResult(command_name, "no-witness")
