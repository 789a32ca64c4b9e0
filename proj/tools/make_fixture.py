#!/usr/bin/env python3
"""Generate the bundled labeled review-comment fixture (fixtures/corpus.jsonl).

Comments are assembled from phrase pools per label with a fixed seed, so the
output is byte-stable. A small share of human-written comments carries a
neighbouring label to mimic annotator disagreement.
"""

import argparse
import json
import random
from datetime import datetime, timedelta, timezone

PROJECTS = ["ledger-core", "field-app", "partner-portal"]
AUTHORS = ["amira.k", "tdelgado", "nsato", "okoro", "lena-w", "rbhatt", "mfischer", "jchen", "sara.o", "pkumar",
           "hvaldez", "ci-bot", "review-bot"]
PEOPLE = ["Nadia Rahman", "Tomas Delgado", "Ken Sato", "Ifeoma Okoro", "Lena Weber", "Rohan Bhatt", "Mia Fischer",
          "Jun Chen", "Sara Olsen", "Priya Kumar"]

THINGS = ["variable", "method", "function", "constant", "class", "parameter", "field", "interface", "query",
          "endpoint", "migration", "test", "loop", "condition", "exception", "log message", "config value",
          "helper", "adapter", "service", "callback", "import", "comment", "enum", "builder", "cache key"]
QUALITIES = ["descriptive", "readable", "consistent", "explicit", "specific", "clear", "safe", "simple"]
FIXES = [
    "rename this {t} to something more {q}",
    "extract this logic into a separate {t}",
    "add a unit test covering the null case of this {t}",
    "move this {t} to the shared utility module",
    "replace the magic number with a named constant",
    "use the existing {t} instead of duplicating the logic",
    "handle the exception instead of swallowing it",
    "split this {t} into smaller pieces",
    "avoid the nested loop here and use a map lookup",
    "maintain the same coding rules applied in this project",
    "close the stream in a finally block",
    "check the return value of this {t}",
    "remove the unused {t}",
    "document why this {t} is needed",
    "make this {t} private since nothing outside uses it",
    "validate the input before calling the {t}",
    "use a transaction around these two writes",
    "keep the {t} immutable",
    "follow the naming convention for this {t}",
    "add a log message with the request id",
]
OPENERS = ["Please", "Please", "Could you", "I suggest we", "Consider to", "It would be better to", "We should",
           "Kindly"]
REASONS = ["so the intent is {q}.", "to keep the code {q}.", "because it is hard to follow otherwise.",
           "since the same pattern is used elsewhere.", "to avoid a possible null pointer.",
           "so that future changes are {q}.", "which also makes testing easier.", "for better performance.",
           "to stay consistent with the rest of the module.", ""]

FOLLOW_UPS = [
    "Otherwise the change looks good to me.",
    "The rest of the {t} logic is fine.",
    "See the {t} in the payment module for a similar approach.",
    "This will make the next refactoring of the {t} much easier.",
    "Happy to discuss if you see it differently.",
]

NOT_EFFICIENT = [
    "Sure I will change it.", "ok", "Done.", "Thanks!", "Sure.", "Will do.", "ok thanks", "Fixed.", "Agreed.",
    "Why?", "Same here.", "Yes.", "Good point, thanks.", "I will change it.", "Sure, done.", "LGTM", "Nice.",
    "Hmm.", "Okay, changed it.", "Thanks for the review.",
]
SOMEHOW = [
    "I think this information is obsolete now.",
    "Is this {t} still needed?",
    "Maybe this could be simpler, not sure.",
    "Not sure about this {t}.",
    "This looks a bit complicated.",
    "Do we really need this {t} here?",
    "Hmm, this {t} might be confusing for others.",
    "Looks odd to me but maybe fine.",
    "I am not convinced this {t} is the right place.",
    "Could be cleaner I guess.",
    "This {t} seems redundant.",
    "Why not reuse the other {t}?",
]
SYSTEM = [
    "Change has been successfully merged by {p}",
    "Patch Set {n}: Code-Review+{k}",
    "Patch Set {n}: Verified+1 Build Successful {u} : SUCCESS",
    "Patch Set {n}: Verified-1 Build Failed {u} : FAILURE",
    "Uploaded patch set {n}: Commit message was updated.",
    "Uploaded patch set {n}.",
    "Build succeeded for commit {h}. Coverage {c}% (+0.{k}%). Details: {u}",
    "Build failed for commit {h}. See the console output at {u}",
    "Merged build finished. {m} tests run, 0 skipped, 0 failed.",
    "Change has been successfully cherry-picked as {h} by {p}",
    "Patch Set {n}: Code-Review+{k} Looks good to me, approved",
    "This pull request has been automatically marked as stale because it has not had recent activity.",
    "Coverage increased ({c}%) to {c}.{k}% when pulling {h} on feature branch into master.",
    "Automated checks passed: lint, unit tests, integration tests. Report: {u}",
    "Deployment to staging completed for revision {h}.",
]
SYSTEM_DETAILS = [
    "Run details: {m} tests executed in {c} seconds with {k} retries.",
    "Triggered by a push to the feature branch by {p}.",
    "Artifacts are available at {u}",
    "Commit {h} was built on agent linux-{n} using the default pipeline.",
    "Static analysis reported no new issues and {k} resolved issues.",
    "Code coverage report: {c}% of lines and {c}% of branches covered.",
    "The job log is archived at {u} for thirty days.",
    "Reviewers notified: {p}.",
    "This message was generated automatically, please do not reply.",
]


def fill(rng, template):
    return template.format(
        t=rng.choice(THINGS), q=rng.choice(QUALITIES), p=rng.choice(PEOPLE), n=rng.randint(1, 12),
        k=rng.randint(1, 2), u="https://ci.example.org/job/{}/{}".format(rng.choice(PROJECTS), rng.randint(100, 9999)),
        h="%07x" % rng.randrange(16 ** 7), c=rng.randint(60, 95), m=rng.randint(120, 2400))


def efficient(rng):
    opener = rng.choice(OPENERS)
    fix = fill(rng, rng.choice(FIXES))
    text = "{} {} {}".format(opener, fix, fill(rng, rng.choice(REASONS))).strip()
    if not text.endswith("."):
        text += "."
    if rng.random() < 0.7:
        text += " Also {} {} {}".format(rng.choice(["please", "maybe", "could you"]), fill(rng, rng.choice(FIXES)),
                                        fill(rng, rng.choice(REASONS))).rstrip()
        if not text.endswith("."):
            text += "."
    if rng.random() < 0.6:
        text += " " + fill(rng, rng.choice(FOLLOW_UPS))
    return text


def system(rng):
    parts = [fill(rng, rng.choice(SYSTEM))]
    for _ in range(rng.choice([1, 1, 2, 2, 3, 3])):
        parts.append(fill(rng, rng.choice(SYSTEM_DETAILS)))
    return "\n".join(parts)


def generate(seed, counts):
    rng = random.Random(seed)
    makers = {
        "Efficient": efficient,
        "Not-Efficient": lambda r: r.choice(NOT_EFFICIENT),
        "Some-How-Efficient": lambda r: fill(r, r.choice(SOMEHOW)),
        "System-Generated": system,
    }
    noisy = {"Efficient": "Some-How-Efficient", "Some-How-Efficient": "Efficient", "Not-Efficient": "Some-How-Efficient"}
    labels = [label for label, n in counts for _ in range(n)]
    rng.shuffle(labels)
    start = datetime(2019, 3, 1, tzinfo=timezone.utc)
    records = []
    for i, label in enumerate(labels):
        body = makers[label](rng)
        if label in noisy and rng.random() < 0.08:
            label = noisy[label]
        project = PROJECTS[i % len(PROJECTS)]
        author = rng.choice(AUTHORS[-2:] if label == "System-Generated" else AUTHORS[:-2])
        when = start + timedelta(minutes=rng.randint(0, 60 * 24 * 540))
        cid = 500000 + i
        records.append({
            "id": str(cid),
            "project": project,
            "author": author,
            "body": body,
            "created_at": when.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "url": "https://github.example.com/acme/{}/pull/{}#discussion_r{}".format(project, 10 + i // 4, cid),
            "label": label,
        })
    return records


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="fixtures/corpus.jsonl")
    ap.add_argument("--seed", type=int, default=20191)
    args = ap.parse_args()
    counts = [("System-Generated", 261), ("Efficient", 98), ("Some-How-Efficient", 29), ("Not-Efficient", 12)]
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        for r in generate(args.seed, counts):
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
