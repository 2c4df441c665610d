"""Template grammar: parsing, clarification and valid-action enumeration.

Parsing matches input against every surface form of every action
template, grounding slot text against the referents of currently visible
objects. Zero groundings -> Unknown; exactly one -> ParsedAction; more
-> Ambiguous with a numbered candidate list. Enumeration walks the same
templates the other way, rendering every grounding that passes the
template's shallow validity predicate into a canonical string that is
guaranteed to parse back uniquely.

Pure functions over a world snapshot: nothing here mutates the world.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import IndexOutOfRange
from .objects import SimObject
from .world import World

TERMINAL_NAMES = ("anode", "cathode", "terminal 1", "terminal 2")
MAX_WAIT = 10


@dataclass(frozen=True)
class ActionTemplate:
    action_id: str
    slots: tuple[str, ...]   # slot kinds, "?"-suffixed when optional
    forms: tuple[str, ...]   # first form is the canonical rendering
    segments: tuple[tuple[tuple[str, Optional[int]], ...], ...] = ()


@dataclass
class ParsedAction:
    action_id: str
    args: tuple
    raw: str

    def key(self):
        return (self.action_id, self.args)


@dataclass
class Ambiguous:
    raw: str
    candidates: list[ParsedAction]
    rendered: list[str]

    def menu_text(self) -> str:
        lines = ["Which do you mean?"]
        lines += [f"{i + 1}. {r}" for i, r in enumerate(self.rendered)]
        return "\n".join(lines)


@dataclass
class Unknown:
    raw: str


_TEMPLATE_CACHE: dict[bool, tuple[list[ActionTemplate], dict[str, ActionTemplate]]] = {}


def _template_tables(world: World):
    teleport = "teleport" in world.simplifications
    cached = _TEMPLATE_CACHE.get(teleport)
    if cached is None:
        templates = []
        for entry in world.configs.grammar:
            if entry["id"] == "teleport" and not teleport:
                continue
            forms = tuple(entry["forms"])
            templates.append(ActionTemplate(
                action_id=entry["id"],
                slots=tuple(entry.get("slots", ())),
                forms=forms,
                segments=tuple(tuple(_form_segments(f)) for f in forms),
            ))
        cached = (templates, {t.action_id: t for t in templates})
        _TEMPLATE_CACHE[teleport] = cached
    return cached


def load_templates(world: World) -> list[ActionTemplate]:
    return _template_tables(world)[0]


# ---------------------------------------------------------------------------
# grounding context
# ---------------------------------------------------------------------------

class ViewContext:
    """Visible referent tables for one parse/enumerate call."""

    def __init__(self, world: World):
        self.world = world
        self.visible = world.visible_objects()
        self.index = world.referent_index(self.visible)
        self._names: dict[int, str] = {}

    def name(self, obj_id: int) -> str:
        if obj_id not in self._names:
            self._names[obj_id] = self.world.render_unique(obj_id, self.visible, self.index)
        return self._names[obj_id]

    # -- object grounding --------------------------------------------------
    def ground_obj(self, text: str) -> list[int]:
        ids = self.index.get(text)
        if ids:
            return list(ids)
        # container qualifier: "apple (in bowl)"
        if text.endswith(")") and " (" in text:
            base, _, qualifier = text.rpartition(" (")
            qualifier = qualifier[:-1]
            for prep in ("in ", "on "):
                if qualifier.startswith(prep):
                    parent_ref = qualifier[len(prep):]
                    out = []
                    for oid in self.index.get(base, []):
                        parent = self.world.parent_of(oid)
                        if parent is not None and parent_ref in (
                                r.lower() for r in self.world.referents(parent.id)):
                            out.append(oid)
                    return out
        # positional discriminator: "apple #2"
        if " #" in text:
            base, _, num = text.rpartition(" #")
            if num.isdigit():
                ids = self.index.get(base, [])
                n = int(num)
                if 1 <= n <= len(ids):
                    return [ids[n - 1]]
        return []

    def ground_term(self, text: str) -> list[tuple[int, str]]:
        out = []
        for terminal in TERMINAL_NAMES:
            suffix = f" {terminal}"
            if not text.endswith(suffix):
                continue
            prefix = text[: -len(suffix)]
            for oid in self.ground_obj(prefix):
                if terminal in _terminals_of(self.world.objects[oid]):
                    out.append((oid, terminal))
        return out

    def ground_slot(self, kind: str, text: str) -> list:
        kind = kind.rstrip("?")
        if kind == "OBJ":
            return self.ground_obj(text)
        if kind == "TERM":
            return self.ground_term(text)
        if kind == "LOC":
            return [text] if text in self.world.rooms else []
        if kind == "DUR":
            if text.isdigit() and 1 <= int(text) <= MAX_WAIT:
                return [int(text)]
            return []
        return []


def _terminals_of(obj: SimObject) -> tuple[str, str]:
    if obj.electrical is not None:
        return obj.electrical.terminals
    return ("terminal 1", "terminal 2")  # virtual unpolarized terminals


# ---------------------------------------------------------------------------
# form matching
# ---------------------------------------------------------------------------

def _form_segments(form: str) -> list[tuple[str, Optional[int]]]:
    """Split a form into (literal, slot_index) alternation. Slots are
    '{0}'/'{1}' placeholders."""
    segments: list[tuple[str, Optional[int]]] = []
    rest = form
    while rest:
        brace = rest.find("{")
        if brace == -1:
            segments.append((rest, None))
            break
        if brace > 0:
            segments.append((rest[:brace], None))
        end = rest.find("}", brace)
        segments.append(("", int(rest[brace + 1:end])))
        rest = rest[end + 1:]
    return segments


def _match_form(ctx: ViewContext, template: ActionTemplate,
                segments: tuple, text: str) -> list[tuple]:
    """All argument tuples this form can ground from the text. Every
    possible split point at literal separators is tried, so referents
    containing separator words do not hide groundings."""
    results: list[dict[int, object]] = []

    def walk(pos: int, seg_idx: int, bound: dict[int, object]):
        if seg_idx == len(segments):
            if pos == len(text):
                results.append(dict(bound))
            return
        literal, slot = segments[seg_idx]
        if slot is None:
            if text.startswith(literal, pos):
                walk(pos + len(literal), seg_idx + 1, bound)
            return
        kind = template.slots[slot]
        if seg_idx == len(segments) - 1:
            spans = [(pos, len(text))]
        else:
            sep = segments[seg_idx + 1][0]
            spans = []
            start = pos
            while True:
                hit = text.find(sep, start)
                if hit == -1:
                    break
                spans.append((pos, hit))
                start = hit + 1
        for begin, end in spans:
            slot_text = text[begin:end].strip()
            if not slot_text:
                continue
            for value in ctx.ground_slot(kind, slot_text):
                bound[slot] = value
                if seg_idx == len(segments) - 1:
                    walk(end, seg_idx + 1, bound)
                else:
                    sep = segments[seg_idx + 1][0]
                    walk(end + len(sep), seg_idx + 2, bound)
                del bound[slot]

    walk(0, 0, {})
    out = []
    for bound in results:
        args = tuple(bound.get(i) for i in range(len(template.slots)))
        out.append(args)
    return out


def normalize(text: str) -> str:
    return " ".join(text.lower().strip().split())


def parse(world: World, text: str):
    """Three-way parse result; never mutates the world."""
    raw = text
    text = normalize(text)
    if not text:
        return Unknown(raw)
    ctx = ViewContext(world)
    found: dict[tuple, ParsedAction] = {}
    order: list[tuple] = []
    for template in load_templates(world):
        for segments in template.segments:
            for args in _match_form(ctx, template, segments, text):
                action = ParsedAction(template.action_id, args, raw)
                if action.key() not in found:
                    found[action.key()] = action
                    order.append(action.key())
    if not found:
        return Unknown(raw)
    if len(found) == 1:
        return found[order[0]]
    candidates = [found[k] for k in order]
    rendered = [render_action(world, c, ctx) for c in candidates]
    return Ambiguous(raw, candidates, rendered)


def clarify(ambiguous: Ambiguous, choice_index: int) -> ParsedAction:
    """Resolve a numbered clarification menu (1-based)."""
    if not 1 <= choice_index <= len(ambiguous.candidates):
        raise IndexOutOfRange(
            f"Choose a number between 1 and {len(ambiguous.candidates)}.")
    return ambiguous.candidates[choice_index - 1]


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render_action(world: World, action: ParsedAction,
                  ctx: Optional[ViewContext] = None) -> str:
    ctx = ctx or ViewContext(world)
    template = _template_tables(world)[1][action.action_id]
    provided = sum(1 for a in action.args if a is not None)
    for segments in template.segments:
        slots_used = [s for _, s in segments if s is not None]
        if len(slots_used) != provided:
            continue
        if any(action.args[s] is None for s in slots_used):
            continue
        parts = []
        for literal, slot in segments:
            if slot is None:
                parts.append(literal)
            else:
                parts.append(_render_arg(ctx, template.slots[slot], action.args[slot]))
        return "".join(parts)
    raise ValueError(f"no form of {action.action_id} fits args {action.args!r}")


def _render_arg(ctx: ViewContext, kind: str, value) -> str:
    kind = kind.rstrip("?")
    if kind == "OBJ":
        return ctx.name(value)
    if kind == "TERM":
        oid, terminal = value
        return f"{ctx.name(oid)} {terminal}"
    return str(value)


# ---------------------------------------------------------------------------
# valid action enumeration
# ---------------------------------------------------------------------------

def _is_storage(obj: SimObject) -> bool:
    return (obj.container is not None and not obj.is_door
            and not obj.is_agent and obj.category != "room")


def _free_terminals(obj: SimObject) -> list[str]:
    terms = _terminals_of(obj)
    if obj.electrical is None:
        return list(terms)
    return [t for t in terms if obj.electrical.connection_at(t) is None]


def _wireable(world: World, obj: SimObject) -> bool:
    if obj.is_agent or obj.is_door:
        return False
    return obj.category == "electrical" or world.portable_now(obj)


def enumerate_grounded(world: World) -> list[ParsedAction]:
    """Every grounding of every template whose shallow validity predicate
    passes; deterministic order (template order, then object ids)."""
    ctx = ViewContext(world)
    w = world
    visible = [w.objects[i] for i in sorted(ctx.visible)]
    here = w.room_of(w.agent_id)
    actions: list[ParsedAction] = []

    def add(action_id: str, *args):
        actions.append(ParsedAction(action_id, tuple(args), ""))

    for template in load_templates(world):
        tid = template.action_id
        if tid == "open":
            for o in visible:
                if o.container is not None and o.container.closeable and not o.container.is_open:
                    add(tid, o.id)
        elif tid == "close":
            for o in visible:
                if o.container is not None and o.container.closeable and o.container.is_open:
                    add(tid, o.id)
        elif tid == "activate":
            for o in visible:
                d = o.device
                if d is None or not d.switchable or d.broken or d.activated:
                    continue
                if d.activation_condition == "outside" and here.name != "outside":
                    continue
                add(tid, o.id)
        elif tid == "deactivate":
            for o in visible:
                d = o.device
                if d is not None and d.switchable and d.activated:
                    add(tid, o.id)
        elif tid == "connect":
            # terminals on arbitrary objects only matter near circuit parts,
            # so connections are offered only when a component is in view
            if any(o.category == "electrical" for o in visible):
                wireable = [o for o in visible if _wireable(w, o)]
                for i, a in enumerate(wireable):
                    for b in wireable[i + 1:]:
                        for ta in _free_terminals(a):
                            for tb in _free_terminals(b):
                                add(tid, (a.id, ta), (b.id, tb))
        elif tid == "disconnect":
            for o in visible:
                if o.electrical is not None and o.electrical.connections:
                    add(tid, o.id)
        elif tid == "use":
            for o in visible:
                kind = o.device.use_kind if o.device else None
                if kind == "thermometer":
                    for target in visible:
                        if target.id != o.id and not target.is_agent:
                            add(tid, o.id, target.id)
                elif kind == "shovel":
                    for target in visible:
                        if target.diggable:
                            add(tid, o.id, target.id)
                elif kind == "stopwatch":
                    add(tid, o.id, None)
        elif tid == "look_around":
            add(tid)
        elif tid == "look_at":
            for o in visible:
                if not o.is_agent:
                    add(tid, o.id)
        elif tid == "look_in":
            for o in visible:
                if _is_storage(o) and o.is_open:
                    add(tid, o.id)
        elif tid == "read":
            for o in visible:
                if o.document_text is not None:
                    add(tid, o.id)
        elif tid == "move":
            carriable = [o for o in visible if w.portable_now(o)]
            targets = [o for o in visible if _is_storage(o) and o.is_open]
            for o in carriable:
                parent_id = w.parent.get(o.id)
                for dest in targets:
                    if dest.id == o.id or dest.id == parent_id:
                        continue
                    if w.in_subtree(dest.id, o.id):
                        continue
                    add(tid, o.id, dest.id)
        elif tid == "pick_up":
            for o in visible:
                if w.portable_now(o) and not w.in_subtree(o.id, w.agent_id):
                    add(tid, o.id)
        elif tid == "put_down":
            for o in w.children(w.agent_id):
                add(tid, o.id)
        elif tid == "pour":
            targets = [o for o in visible if _is_storage(o) and o.is_open]
            for o in visible:
                if w.is_liquid(o):
                    parent_id = w.parent.get(o.id)
                    for dest in targets:
                        if dest.id != parent_id and dest.id != o.id:
                            add(tid, o.id, dest.id)
                elif _is_storage(o) and o.is_open and \
                        any(w.is_liquid(c) for c in w.children(o.id)):
                    for dest in targets:
                        if dest.id != o.id and not w.in_subtree(dest.id, o.id):
                            add(tid, o.id, dest.id)
        elif tid == "dunk":
            liquids = [o for o in visible if w.is_liquid(o)]
            for o in visible:
                if not w.portable_now(o):
                    continue
                for liq in liquids:
                    if w.parent.get(liq.id) != o.id:
                        add(tid, o.id, liq.id)
        elif tid == "mix":
            from .engines.chemistry import find_recipe
            for o in visible:
                if _is_storage(o) and o.is_open and len(w.children(o.id)) >= 2:
                    if find_recipe(w, w.children(o.id)) is not None:
                        add(tid, o.id)
        elif tid == "go":
            for nb in here.neighbors:
                door = w.door_between(here.name, nb)
                if door is None or door.container.is_open:
                    add(tid, nb)
        elif tid == "teleport":
            for room_name in sorted(w.rooms):
                if room_name != here.name:
                    add(tid, room_name)
        elif tid == "eat":
            for o in visible:
                if o.edible and w.portable_now(o):
                    add(tid, o.id)
        elif tid == "flush":
            for o in visible:
                if o.flushable:
                    add(tid, o.id)
        elif tid == "focus":
            for o in visible:
                if not o.is_agent and not o.is_door:
                    add(tid, o.id)
        elif tid == "wait":
            add(tid, None)
        elif tid == "task":
            add(tid)
        elif tid == "inventory":
            add(tid)
    return actions


def enumerate_valid_actions(world: World) -> list[str]:
    ctx = ViewContext(world)
    return [render_action(world, a, ctx) for a in enumerate_grounded(world)]
