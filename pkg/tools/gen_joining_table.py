"""Regenerate src/parseq_urdu/_joining.py from the UCD joining types.

The `regex` package compiles the Unicode Character Database, including the
Joining_Type property from ArabicShaping.txt, so it is used as the source.

    python tools/gen_joining_table.py > src/parseq_urdu/_joining.py
"""

import unicodedata

import regex

FIRST, LAST = 0x0600, 0x06FF
TYPES = ("D", "R", "T", "C", "L")


def joining_type(cp):
    ch = chr(cp)
    for jt in TYPES:
        if regex.match(r"\p{Joining_Type=%s}" % jt, ch):
            return jt
    return "U"


def main():
    print('"""Joining types for U+0600..U+06FF (generated by tools/gen_joining_table.py).')
    print()
    print("Codepoints not listed are unassigned.")
    print('"""')
    print()
    print("JOINING_TYPES = {")
    for cp in range(FIRST, LAST + 1):
        if regex.match(r"\p{Cn}", chr(cp)):
            continue
        print("    0x%04X: %r,  # %s" % (cp, joining_type(cp), unicodedata.name(chr(cp), "")))
    print("}")


if __name__ == "__main__":
    main()
