#!/usr/bin/env python3
"""Emit the ten-claim scripted fixture, its frozen search cache and the
claims file under fixtures/.

One fixture serves every run configuration (default, no-decompose,
no-stepwise, search=never, search=always): entries carry suffix match keys so
the scripted backend picks the right continuation for whichever prompt the
protocol builds.

Texts that a probe generation may consume must never contain the bigram
"no" (any case) outside the literal " No." reply, or the stop sequence would
truncate them early. This script asserts that invariant.
"""

import json
import pathlib
import re

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

INSTRUCTION = ('Tell me if you are confident to answer the question or not. '
               'Answer with "yes" or "no":')
STOP_TAIL = ('Tell me if you are confident to answer the question or not.')
NOSPLIT = ('A fact checker will not split the claim since the original claim '
           'is easier to verify.')


def header(subject):
    return (f'To verify {subject}, a fact-checker will go through a '
            'step-by-step process to ask and answer a series of questions '
            'relevant to its factuality. Here are the specific steps he/she '
            'raise each question and look for an answer:')


def final(label):
    return ('Based on the answers to these questions, it is clear that among '
            f'true, half, and false, the claim is classified as {label}.')


def probe_key(q):
    return f'{q} {INSTRUCTION}'


def assert_no_free(text, what):
    if re.search(r'[nN][oO]', text):
        raise SystemExit(f'"no" bigram in {what}: {text!r}')


CLAIMS = [
    # --- single-subclaim (no-split) claims -------------------------------
    dict(id="c01", gold="true", label="true", split=None,
         text="The harbor tunnel carries forty thousand vehicles each day.",
         q1="How many vehicles use the harbor tunnel each day?",
         a1=("Traffic counts from the transit agency list about forty "
             "thousand vehicles per day in the tunnel."),
         snip1=("The latest traffic survey recorded 39,800 vehicles per "
                "weekday in the harbor tunnel."),
         dsnip=("Transit agency dashboards put typical weekday traffic in "
                "the harbor tunnel at about forty thousand vehicles.")),
    dict(id="c02", gold="half", label="half", split=None, notconf=True,
         text="The museum doubled its visitor numbers after the free entry policy.",
         q1="How did visitor figures change after the museum made entry free?",
         snip1=("Attendance rose from 210,000 to 340,000 in the first year "
                "of free entry, an increase of about 62 percent rather than "
                "a doubling."),
         unaided1=("Museum reports describe a large rise in attendance after "
                   "free entry began, but the increase fell short of a full "
                   "doubling."),
         dsnip=("Visitor statistics show attendance grew 62 percent in the "
                "first free-entry year, well below a doubling.")),
    dict(id="c03", gold="false", label="false", split=None,
         text="The observatory's new telescope was funded entirely by ticket sales.",
         q1="How was the observatory's new telescope funded?",
         a1=("The telescope was paid for mainly through a research grant and "
             "private gifts; ticket sales covered a small share."),
         snip1=("Budget filings attribute 82 percent of the telescope cost "
                "to a research grant, the rest to private gifts and ticket "
                "revenue."),
         dsnip=("The observatory's financial report credits a research grant "
                "for most of the telescope cost.")),
    dict(id="c04", gold="true", label="true", split=None, notconf=True,
         text="The coastal rail line reopened within eight weeks of the landslide.",
         q1="How quickly did the coastal rail line reopen after the landslide?",
         snip1=("Engineers restored the coastal line in 55 days, with regular "
                "service resuming seven and a half weeks after the slip "
                "closed the route."),
         unaided1=("Service records indicate the line carried passengers "
                   "again less than eight weeks after the slide."),
         dsnip=("Railway bulletins record a 55-day closure of the coastal "
                "line following the landslide.")),
    dict(id="c05", gold="false", label="half", split=None,
         text="Recycling rates tripled after the deposit scheme started.",
         q1="How much did recycling rates rise after the deposit scheme began?",
         a1=("Container return data cite a rise from 22 percent to 51 "
             "percent, a bit over double but well short of triple."),
         snip1=("Deposit scheme statistics show return rates climbing from "
                "22 to 51 percent in three years."),
         dsnip=("Environmental agency tables show recycling rates slightly "
                "more than doubled after deposits began.")),
    # --- two-subclaim claims ---------------------------------------------
    dict(id="c06", gold="true", label="true",
         text=("The city orchestra performed in twelve schools and reached "
               "five thousand students last term."),
         split=("The city orchestra performed in twelve schools last term.",
                "The orchestra's school concerts reached five thousand students."),
         q1="In how many schools did the city orchestra perform last term?",
         a1="The orchestra's term report lists twelve school visits, matching the claim.",
         snip1=("A season roundup counted twelve participating schools in "
                "the orchestra's outreach program."),
         q2="How many students attended the orchestra's school concerts?",
         snip2=("District tallies put combined attendance at the orchestra's "
                "school concerts at 5,100 students across the term."),
         unaided2=("District figures place attendance slightly above five "
                   "thousand students."),
         dsnip1=("The orchestra's outreach schedule lists concerts in twelve "
                 "schools for the term."),
         dsnip2=("Attendance sheets from the district total about 5,100 "
                 "students at the school concerts.")),
    dict(id="c07", gold="half", label="half",
         text=("The festival drew a record crowd and generated two million "
               "in local spending."),
         split=("The festival drew a record crowd.",
                "The festival generated two million in local spending."),
         q1="Did this year's festival set an attendance record?",
         a1=("Gate figures show the largest crowd in the festival's history, "
             "ahead of the previous peak by eight percent."),
         snip1=("Ticket scans counted a record 64,000 visitors at this "
                "year's festival."),
         q2="How much local spending did the festival generate?",
         snip2=("A chamber of commerce estimate placed festival-related "
                "spending at 1.2 million, with organizers citing a wider "
                "range of figures."),
         unaided2=("Published estimates of festival spending cluster around "
                   "1.2 million, below the claimed figure."),
         dsnip1=("Festival gate data show the biggest crowd in the event's "
                 "history."),
         dsnip2=("A commerce chamber study estimated festival spending at "
                 "1.2 million.")),
    dict(id="c08", gold="false", label="false",
         text=("The valley wind farm powers every home in the county and was "
               "built without subsidies."),
         split=("The valley wind farm powers every home in the county.",
                "The wind farm was built without subsidies."),
         q1="What share of county homes does the valley wind farm supply?",
         a1=("Grid data attribute roughly a third of household demand in the "
             "county to the wind farm."),
         snip1=("Utility disclosures credit the valley wind farm with about "
                "a third of county household supply."),
         q2="Did the wind farm receive public subsidies during construction?",
         snip2=("Financing documents show the project drew on a federal "
                "production credit and a state grant covering 18 percent of "
                "build costs."),
         unaided2=("Public filings list a federal production credit among "
                   "the project's financing sources."),
         dsnip1=("Grid operator data tie about a third of county household "
                 "demand to the wind farm."),
         dsnip2=("State records list an 18 percent construction grant for "
                 "the wind farm.")),
    dict(id="c09", gold="true", label="false",
         text=("The bakery chain sources all flour from county mills and "
               "employs two hundred bakers."),
         split=("The bakery chain sources all its flour from county mills.",
                "The bakery chain employs two hundred bakers."),
         q1="Where does the bakery chain source its flour?",
         a1=("Supplier lists mix county mills with imported durum from out "
             "of state, so the all-local sourcing claim fails."),
         snip1=("Procurement summaries pair county mills with imported durum "
                "for the chain's bakeries."),
         q2="How many bakers does the chain employ?",
         snip2=("Payroll filings list 138 bakery staff across all sites, of "
                "whom about 90 work as bakers."),
         unaided2=("Payroll data put the baker headcount far below two "
                   "hundred."),
         dsnip1=("Supplier records show the chain buys flour from county "
                 "mills and out-of-state importers."),
         dsnip2=("Employment filings list about 90 bakers at the chain.")),
    dict(id="c10", gold="half", label="half",
         text=("The library lends e-books in six languages and waived late "
               "fees for a full year."),
         split=("The library lends e-books in six languages.",
                "The library waived late fees for a full year."),
         q1="In how many languages does the library lend e-books?",
         a1="The catalog offers e-book collections in six languages, matching the claim.",
         snip1=("The digital catalog lists e-book collections in six "
                "languages."),
         q2="For how long did the library waive late fees?",
         snip2=("Board minutes record a fee waiver that ran for seven months "
                "before standard fines resumed."),
         unaided2=("The fee waiver lasted about seven months, well under a "
                   "year."),
         dsnip1=("Catalog pages list six language collections for e-book "
                 "lending."),
         dsnip2=("Library board minutes describe a seven-month late-fee "
                 "waiver.")),
]


def tail_key(snippet, n=48):
    return snippet[-n:]


def build_conversation(c):
    entries = []
    single = c["split"] is None
    q1, label = c["q1"], c["label"]

    def add(match, text):
        entries.append({"match": match, "text": text})

    # A: first generation after "A: " (decomposition or no-split + header + q1)
    if single:
        a_text = f'{NOSPLIT}\n{header("the claim")}\nQuestion: {q1} {STOP_TAIL}'
    else:
        s1, s2 = c["split"]
        a_text = ('A fact checker will decompose the claim into 2 subclaims '
                  'that are easier to verify:\n'
                  f'1. {s1}\n2. {s2}\n{header("subclaim 1")}\n'
                  f'Question: {q1} {STOP_TAIL}')
    add("\nA: ", a_text)

    # B: first generation when decomposition is ablated (sentence injected)
    add("easier to verify.\n", f'{header("the claim")}\nQuestion: {q1} {STOP_TAIL}')

    if single:
        if c.get("notconf"):
            add(probe_key(q1), " No.")
            add(tail_key(c["snip1"]), "\n" + final(label))
            add(f'{probe_key(q1)} No.\nAnswer:',
                f' {c["unaided1"]}\n{final(label)}')
        else:
            probe_text = f' Yes.\nAnswer: {c["a1"]}\n{final(label)}'
            assert_no_free(probe_text, f'{c["id"]} confident probe')
            add(probe_key(q1), probe_text)
            add(tail_key(c["snip1"]), "\n" + final(label))
    else:
        q2 = c["q2"]
        transition = f'{header("subclaim 2")}\nQuestion: {q2} {STOP_TAIL}'
        probe_text = f' Yes.\nAnswer: {c["a1"]}\n{transition}'
        assert_no_free(probe_text.replace(STOP_TAIL, ""),
                       f'{c["id"]} confident probe')
        add(probe_key(q1), probe_text)
        add(tail_key(c["snip1"]), "\n" + transition)
        add(probe_key(q2), " No.")
        add(tail_key(c["snip2"]), "\n" + final(label))
        add(f'{probe_key(q2)} No.\nAnswer:', f' {c["unaided2"]}\n{final(label)}')

    # G: completion of the injected final elicitation (no-stepwise runs)
    add("the claim is classified as", f' {label}.')

    keys = [e["match"] for e in entries]
    if len(set(keys)) != len(keys):
        raise SystemExit(f'{c["id"]}: duplicate match keys')
    return {"key": c["text"], "entries": entries}


def build_cache(c):
    out = {}
    site = f'https://records.example.gov/{c["id"]}'

    def hits(slug, snippet, with_filtered=False):
        arr = []
        if with_filtered:
            arr.append({
                "url": f'https://factcheck.example.org/{c["id"]}-review',
                "title": "Review of the claim",
                "snippet": "A reviewed verdict on this claim.",
            })
        arr.append({"url": f"{site}/{slug}", "title": slug.replace("-", " "),
                    "snippet": snippet})
        return arr

    single = c["split"] is None
    out[c["q1"]] = hits("q1", c["snip1"], with_filtered=c["id"] in ("c02", "c06"))
    if single:
        out[c["text"]] = hits("direct", c["dsnip"])
    else:
        out[c["q2"]] = hits("q2", c["snip2"], with_filtered=c["id"] == "c06")
        s1, s2 = c["split"]
        out[s1] = hits("direct-1", c["dsnip1"])
        out[s2] = hits("direct-2", c["dsnip2"])
    return out


def main():
    for c in CLAIMS:
        assert_no_free(c["q1"], f'{c["id"]} q1')
        if c["split"] is not None:
            assert_no_free(c["q2"], f'{c["id"]} q2')
        assert_no_free(final(c["label"]), f'{c["id"]} final')
        if "a1" in c:
            assert_no_free(c["a1"], f'{c["id"]} a1')
    assert_no_free(header("subclaim 2"), "header")

    fixture = {"name": "batch10",
               "conversations": [build_conversation(c) for c in CLAIMS]}
    cache = {}
    for c in CLAIMS:
        cache.update(build_cache(c))

    OUT.mkdir(exist_ok=True)
    (OUT / "batch10_fixture.json").write_text(
        json.dumps(fixture, indent=2, ensure_ascii=False) + "\n")
    (OUT / "batch10_cache.json").write_text(
        json.dumps(cache, indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    with open(OUT / "batch10_claims.jsonl", "w") as f:
        for c in CLAIMS:
            f.write(json.dumps({"id": c["id"], "text": c["text"],
                                "gold": c["gold"], "metadata": {}},
                               ensure_ascii=False) + "\n")
    print(f'wrote {len(CLAIMS)} conversations, {len(cache)} cache entries')


if __name__ == "__main__":
    main()
