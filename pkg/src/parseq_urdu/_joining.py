"""Joining types for U+0600..U+06FF (generated by tools/gen_joining_table.py).

Codepoints not listed are unassigned.
"""

JOINING_TYPES = {
    0x0600: 'U',  # ARABIC NUMBER SIGN
    0x0601: 'U',  # ARABIC SIGN SANAH
    0x0602: 'U',  # ARABIC FOOTNOTE MARKER
    0x0603: 'U',  # ARABIC SIGN SAFHA
    0x0604: 'U',  # ARABIC SIGN SAMVAT
    0x0605: 'U',  # ARABIC NUMBER MARK ABOVE
    0x0606: 'U',  # ARABIC-INDIC CUBE ROOT
    0x0607: 'U',  # ARABIC-INDIC FOURTH ROOT
    0x0608: 'U',  # ARABIC RAY
    0x0609: 'U',  # ARABIC-INDIC PER MILLE SIGN
    0x060A: 'U',  # ARABIC-INDIC PER TEN THOUSAND SIGN
    0x060B: 'U',  # AFGHANI SIGN
    0x060C: 'U',  # ARABIC COMMA
    0x060D: 'U',  # ARABIC DATE SEPARATOR
    0x060E: 'U',  # ARABIC POETIC VERSE SIGN
    0x060F: 'U',  # ARABIC SIGN MISRA
    0x0610: 'T',  # ARABIC SIGN SALLALLAHOU ALAYHE WASSALLAM
    0x0611: 'T',  # ARABIC SIGN ALAYHE ASSALLAM
    0x0612: 'T',  # ARABIC SIGN RAHMATULLAH ALAYHE
    0x0613: 'T',  # ARABIC SIGN RADI ALLAHOU ANHU
    0x0614: 'T',  # ARABIC SIGN TAKHALLUS
    0x0615: 'T',  # ARABIC SMALL HIGH TAH
    0x0616: 'T',  # ARABIC SMALL HIGH LIGATURE ALEF WITH LAM WITH YEH
    0x0617: 'T',  # ARABIC SMALL HIGH ZAIN
    0x0618: 'T',  # ARABIC SMALL FATHA
    0x0619: 'T',  # ARABIC SMALL DAMMA
    0x061A: 'T',  # ARABIC SMALL KASRA
    0x061B: 'U',  # ARABIC SEMICOLON
    0x061C: 'T',  # ARABIC LETTER MARK
    0x061D: 'U',  # 
    0x061E: 'U',  # ARABIC TRIPLE DOT PUNCTUATION MARK
    0x061F: 'U',  # ARABIC QUESTION MARK
    0x0620: 'D',  # ARABIC LETTER KASHMIRI YEH
    0x0621: 'U',  # ARABIC LETTER HAMZA
    0x0622: 'R',  # ARABIC LETTER ALEF WITH MADDA ABOVE
    0x0623: 'R',  # ARABIC LETTER ALEF WITH HAMZA ABOVE
    0x0624: 'R',  # ARABIC LETTER WAW WITH HAMZA ABOVE
    0x0625: 'R',  # ARABIC LETTER ALEF WITH HAMZA BELOW
    0x0626: 'D',  # ARABIC LETTER YEH WITH HAMZA ABOVE
    0x0627: 'R',  # ARABIC LETTER ALEF
    0x0628: 'D',  # ARABIC LETTER BEH
    0x0629: 'R',  # ARABIC LETTER TEH MARBUTA
    0x062A: 'D',  # ARABIC LETTER TEH
    0x062B: 'D',  # ARABIC LETTER THEH
    0x062C: 'D',  # ARABIC LETTER JEEM
    0x062D: 'D',  # ARABIC LETTER HAH
    0x062E: 'D',  # ARABIC LETTER KHAH
    0x062F: 'R',  # ARABIC LETTER DAL
    0x0630: 'R',  # ARABIC LETTER THAL
    0x0631: 'R',  # ARABIC LETTER REH
    0x0632: 'R',  # ARABIC LETTER ZAIN
    0x0633: 'D',  # ARABIC LETTER SEEN
    0x0634: 'D',  # ARABIC LETTER SHEEN
    0x0635: 'D',  # ARABIC LETTER SAD
    0x0636: 'D',  # ARABIC LETTER DAD
    0x0637: 'D',  # ARABIC LETTER TAH
    0x0638: 'D',  # ARABIC LETTER ZAH
    0x0639: 'D',  # ARABIC LETTER AIN
    0x063A: 'D',  # ARABIC LETTER GHAIN
    0x063B: 'D',  # ARABIC LETTER KEHEH WITH TWO DOTS ABOVE
    0x063C: 'D',  # ARABIC LETTER KEHEH WITH THREE DOTS BELOW
    0x063D: 'D',  # ARABIC LETTER FARSI YEH WITH INVERTED V
    0x063E: 'D',  # ARABIC LETTER FARSI YEH WITH TWO DOTS ABOVE
    0x063F: 'D',  # ARABIC LETTER FARSI YEH WITH THREE DOTS ABOVE
    0x0640: 'C',  # ARABIC TATWEEL
    0x0641: 'D',  # ARABIC LETTER FEH
    0x0642: 'D',  # ARABIC LETTER QAF
    0x0643: 'D',  # ARABIC LETTER KAF
    0x0644: 'D',  # ARABIC LETTER LAM
    0x0645: 'D',  # ARABIC LETTER MEEM
    0x0646: 'D',  # ARABIC LETTER NOON
    0x0647: 'D',  # ARABIC LETTER HEH
    0x0648: 'R',  # ARABIC LETTER WAW
    0x0649: 'D',  # ARABIC LETTER ALEF MAKSURA
    0x064A: 'D',  # ARABIC LETTER YEH
    0x064B: 'T',  # ARABIC FATHATAN
    0x064C: 'T',  # ARABIC DAMMATAN
    0x064D: 'T',  # ARABIC KASRATAN
    0x064E: 'T',  # ARABIC FATHA
    0x064F: 'T',  # ARABIC DAMMA
    0x0650: 'T',  # ARABIC KASRA
    0x0651: 'T',  # ARABIC SHADDA
    0x0652: 'T',  # ARABIC SUKUN
    0x0653: 'T',  # ARABIC MADDAH ABOVE
    0x0654: 'T',  # ARABIC HAMZA ABOVE
    0x0655: 'T',  # ARABIC HAMZA BELOW
    0x0656: 'T',  # ARABIC SUBSCRIPT ALEF
    0x0657: 'T',  # ARABIC INVERTED DAMMA
    0x0658: 'T',  # ARABIC MARK NOON GHUNNA
    0x0659: 'T',  # ARABIC ZWARAKAY
    0x065A: 'T',  # ARABIC VOWEL SIGN SMALL V ABOVE
    0x065B: 'T',  # ARABIC VOWEL SIGN INVERTED SMALL V ABOVE
    0x065C: 'T',  # ARABIC VOWEL SIGN DOT BELOW
    0x065D: 'T',  # ARABIC REVERSED DAMMA
    0x065E: 'T',  # ARABIC FATHA WITH TWO DOTS
    0x065F: 'T',  # ARABIC WAVY HAMZA BELOW
    0x0660: 'U',  # ARABIC-INDIC DIGIT ZERO
    0x0661: 'U',  # ARABIC-INDIC DIGIT ONE
    0x0662: 'U',  # ARABIC-INDIC DIGIT TWO
    0x0663: 'U',  # ARABIC-INDIC DIGIT THREE
    0x0664: 'U',  # ARABIC-INDIC DIGIT FOUR
    0x0665: 'U',  # ARABIC-INDIC DIGIT FIVE
    0x0666: 'U',  # ARABIC-INDIC DIGIT SIX
    0x0667: 'U',  # ARABIC-INDIC DIGIT SEVEN
    0x0668: 'U',  # ARABIC-INDIC DIGIT EIGHT
    0x0669: 'U',  # ARABIC-INDIC DIGIT NINE
    0x066A: 'U',  # ARABIC PERCENT SIGN
    0x066B: 'U',  # ARABIC DECIMAL SEPARATOR
    0x066C: 'U',  # ARABIC THOUSANDS SEPARATOR
    0x066D: 'U',  # ARABIC FIVE POINTED STAR
    0x066E: 'D',  # ARABIC LETTER DOTLESS BEH
    0x066F: 'D',  # ARABIC LETTER DOTLESS QAF
    0x0670: 'T',  # ARABIC LETTER SUPERSCRIPT ALEF
    0x0671: 'R',  # ARABIC LETTER ALEF WASLA
    0x0672: 'R',  # ARABIC LETTER ALEF WITH WAVY HAMZA ABOVE
    0x0673: 'R',  # ARABIC LETTER ALEF WITH WAVY HAMZA BELOW
    0x0674: 'U',  # ARABIC LETTER HIGH HAMZA
    0x0675: 'R',  # ARABIC LETTER HIGH HAMZA ALEF
    0x0676: 'R',  # ARABIC LETTER HIGH HAMZA WAW
    0x0677: 'R',  # ARABIC LETTER U WITH HAMZA ABOVE
    0x0678: 'D',  # ARABIC LETTER HIGH HAMZA YEH
    0x0679: 'D',  # ARABIC LETTER TTEH
    0x067A: 'D',  # ARABIC LETTER TTEHEH
    0x067B: 'D',  # ARABIC LETTER BEEH
    0x067C: 'D',  # ARABIC LETTER TEH WITH RING
    0x067D: 'D',  # ARABIC LETTER TEH WITH THREE DOTS ABOVE DOWNWARDS
    0x067E: 'D',  # ARABIC LETTER PEH
    0x067F: 'D',  # ARABIC LETTER TEHEH
    0x0680: 'D',  # ARABIC LETTER BEHEH
    0x0681: 'D',  # ARABIC LETTER HAH WITH HAMZA ABOVE
    0x0682: 'D',  # ARABIC LETTER HAH WITH TWO DOTS VERTICAL ABOVE
    0x0683: 'D',  # ARABIC LETTER NYEH
    0x0684: 'D',  # ARABIC LETTER DYEH
    0x0685: 'D',  # ARABIC LETTER HAH WITH THREE DOTS ABOVE
    0x0686: 'D',  # ARABIC LETTER TCHEH
    0x0687: 'D',  # ARABIC LETTER TCHEHEH
    0x0688: 'R',  # ARABIC LETTER DDAL
    0x0689: 'R',  # ARABIC LETTER DAL WITH RING
    0x068A: 'R',  # ARABIC LETTER DAL WITH DOT BELOW
    0x068B: 'R',  # ARABIC LETTER DAL WITH DOT BELOW AND SMALL TAH
    0x068C: 'R',  # ARABIC LETTER DAHAL
    0x068D: 'R',  # ARABIC LETTER DDAHAL
    0x068E: 'R',  # ARABIC LETTER DUL
    0x068F: 'R',  # ARABIC LETTER DAL WITH THREE DOTS ABOVE DOWNWARDS
    0x0690: 'R',  # ARABIC LETTER DAL WITH FOUR DOTS ABOVE
    0x0691: 'R',  # ARABIC LETTER RREH
    0x0692: 'R',  # ARABIC LETTER REH WITH SMALL V
    0x0693: 'R',  # ARABIC LETTER REH WITH RING
    0x0694: 'R',  # ARABIC LETTER REH WITH DOT BELOW
    0x0695: 'R',  # ARABIC LETTER REH WITH SMALL V BELOW
    0x0696: 'R',  # ARABIC LETTER REH WITH DOT BELOW AND DOT ABOVE
    0x0697: 'R',  # ARABIC LETTER REH WITH TWO DOTS ABOVE
    0x0698: 'R',  # ARABIC LETTER JEH
    0x0699: 'R',  # ARABIC LETTER REH WITH FOUR DOTS ABOVE
    0x069A: 'D',  # ARABIC LETTER SEEN WITH DOT BELOW AND DOT ABOVE
    0x069B: 'D',  # ARABIC LETTER SEEN WITH THREE DOTS BELOW
    0x069C: 'D',  # ARABIC LETTER SEEN WITH THREE DOTS BELOW AND THREE DOTS ABOVE
    0x069D: 'D',  # ARABIC LETTER SAD WITH TWO DOTS BELOW
    0x069E: 'D',  # ARABIC LETTER SAD WITH THREE DOTS ABOVE
    0x069F: 'D',  # ARABIC LETTER TAH WITH THREE DOTS ABOVE
    0x06A0: 'D',  # ARABIC LETTER AIN WITH THREE DOTS ABOVE
    0x06A1: 'D',  # ARABIC LETTER DOTLESS FEH
    0x06A2: 'D',  # ARABIC LETTER FEH WITH DOT MOVED BELOW
    0x06A3: 'D',  # ARABIC LETTER FEH WITH DOT BELOW
    0x06A4: 'D',  # ARABIC LETTER VEH
    0x06A5: 'D',  # ARABIC LETTER FEH WITH THREE DOTS BELOW
    0x06A6: 'D',  # ARABIC LETTER PEHEH
    0x06A7: 'D',  # ARABIC LETTER QAF WITH DOT ABOVE
    0x06A8: 'D',  # ARABIC LETTER QAF WITH THREE DOTS ABOVE
    0x06A9: 'D',  # ARABIC LETTER KEHEH
    0x06AA: 'D',  # ARABIC LETTER SWASH KAF
    0x06AB: 'D',  # ARABIC LETTER KAF WITH RING
    0x06AC: 'D',  # ARABIC LETTER KAF WITH DOT ABOVE
    0x06AD: 'D',  # ARABIC LETTER NG
    0x06AE: 'D',  # ARABIC LETTER KAF WITH THREE DOTS BELOW
    0x06AF: 'D',  # ARABIC LETTER GAF
    0x06B0: 'D',  # ARABIC LETTER GAF WITH RING
    0x06B1: 'D',  # ARABIC LETTER NGOEH
    0x06B2: 'D',  # ARABIC LETTER GAF WITH TWO DOTS BELOW
    0x06B3: 'D',  # ARABIC LETTER GUEH
    0x06B4: 'D',  # ARABIC LETTER GAF WITH THREE DOTS ABOVE
    0x06B5: 'D',  # ARABIC LETTER LAM WITH SMALL V
    0x06B6: 'D',  # ARABIC LETTER LAM WITH DOT ABOVE
    0x06B7: 'D',  # ARABIC LETTER LAM WITH THREE DOTS ABOVE
    0x06B8: 'D',  # ARABIC LETTER LAM WITH THREE DOTS BELOW
    0x06B9: 'D',  # ARABIC LETTER NOON WITH DOT BELOW
    0x06BA: 'D',  # ARABIC LETTER NOON GHUNNA
    0x06BB: 'D',  # ARABIC LETTER RNOON
    0x06BC: 'D',  # ARABIC LETTER NOON WITH RING
    0x06BD: 'D',  # ARABIC LETTER NOON WITH THREE DOTS ABOVE
    0x06BE: 'D',  # ARABIC LETTER HEH DOACHASHMEE
    0x06BF: 'D',  # ARABIC LETTER TCHEH WITH DOT ABOVE
    0x06C0: 'R',  # ARABIC LETTER HEH WITH YEH ABOVE
    0x06C1: 'D',  # ARABIC LETTER HEH GOAL
    0x06C2: 'D',  # ARABIC LETTER HEH GOAL WITH HAMZA ABOVE
    0x06C3: 'R',  # ARABIC LETTER TEH MARBUTA GOAL
    0x06C4: 'R',  # ARABIC LETTER WAW WITH RING
    0x06C5: 'R',  # ARABIC LETTER KIRGHIZ OE
    0x06C6: 'R',  # ARABIC LETTER OE
    0x06C7: 'R',  # ARABIC LETTER U
    0x06C8: 'R',  # ARABIC LETTER YU
    0x06C9: 'R',  # ARABIC LETTER KIRGHIZ YU
    0x06CA: 'R',  # ARABIC LETTER WAW WITH TWO DOTS ABOVE
    0x06CB: 'R',  # ARABIC LETTER VE
    0x06CC: 'D',  # ARABIC LETTER FARSI YEH
    0x06CD: 'R',  # ARABIC LETTER YEH WITH TAIL
    0x06CE: 'D',  # ARABIC LETTER YEH WITH SMALL V
    0x06CF: 'R',  # ARABIC LETTER WAW WITH DOT ABOVE
    0x06D0: 'D',  # ARABIC LETTER E
    0x06D1: 'D',  # ARABIC LETTER YEH WITH THREE DOTS BELOW
    0x06D2: 'R',  # ARABIC LETTER YEH BARREE
    0x06D3: 'R',  # ARABIC LETTER YEH BARREE WITH HAMZA ABOVE
    0x06D4: 'U',  # ARABIC FULL STOP
    0x06D5: 'R',  # ARABIC LETTER AE
    0x06D6: 'T',  # ARABIC SMALL HIGH LIGATURE SAD WITH LAM WITH ALEF MAKSURA
    0x06D7: 'T',  # ARABIC SMALL HIGH LIGATURE QAF WITH LAM WITH ALEF MAKSURA
    0x06D8: 'T',  # ARABIC SMALL HIGH MEEM INITIAL FORM
    0x06D9: 'T',  # ARABIC SMALL HIGH LAM ALEF
    0x06DA: 'T',  # ARABIC SMALL HIGH JEEM
    0x06DB: 'T',  # ARABIC SMALL HIGH THREE DOTS
    0x06DC: 'T',  # ARABIC SMALL HIGH SEEN
    0x06DD: 'U',  # ARABIC END OF AYAH
    0x06DE: 'U',  # ARABIC START OF RUB EL HIZB
    0x06DF: 'T',  # ARABIC SMALL HIGH ROUNDED ZERO
    0x06E0: 'T',  # ARABIC SMALL HIGH UPRIGHT RECTANGULAR ZERO
    0x06E1: 'T',  # ARABIC SMALL HIGH DOTLESS HEAD OF KHAH
    0x06E2: 'T',  # ARABIC SMALL HIGH MEEM ISOLATED FORM
    0x06E3: 'T',  # ARABIC SMALL LOW SEEN
    0x06E4: 'T',  # ARABIC SMALL HIGH MADDA
    0x06E5: 'U',  # ARABIC SMALL WAW
    0x06E6: 'U',  # ARABIC SMALL YEH
    0x06E7: 'T',  # ARABIC SMALL HIGH YEH
    0x06E8: 'T',  # ARABIC SMALL HIGH NOON
    0x06E9: 'U',  # ARABIC PLACE OF SAJDAH
    0x06EA: 'T',  # ARABIC EMPTY CENTRE LOW STOP
    0x06EB: 'T',  # ARABIC EMPTY CENTRE HIGH STOP
    0x06EC: 'T',  # ARABIC ROUNDED HIGH STOP WITH FILLED CENTRE
    0x06ED: 'T',  # ARABIC SMALL LOW MEEM
    0x06EE: 'R',  # ARABIC LETTER DAL WITH INVERTED V
    0x06EF: 'R',  # ARABIC LETTER REH WITH INVERTED V
    0x06F0: 'U',  # EXTENDED ARABIC-INDIC DIGIT ZERO
    0x06F1: 'U',  # EXTENDED ARABIC-INDIC DIGIT ONE
    0x06F2: 'U',  # EXTENDED ARABIC-INDIC DIGIT TWO
    0x06F3: 'U',  # EXTENDED ARABIC-INDIC DIGIT THREE
    0x06F4: 'U',  # EXTENDED ARABIC-INDIC DIGIT FOUR
    0x06F5: 'U',  # EXTENDED ARABIC-INDIC DIGIT FIVE
    0x06F6: 'U',  # EXTENDED ARABIC-INDIC DIGIT SIX
    0x06F7: 'U',  # EXTENDED ARABIC-INDIC DIGIT SEVEN
    0x06F8: 'U',  # EXTENDED ARABIC-INDIC DIGIT EIGHT
    0x06F9: 'U',  # EXTENDED ARABIC-INDIC DIGIT NINE
    0x06FA: 'D',  # ARABIC LETTER SHEEN WITH DOT BELOW
    0x06FB: 'D',  # ARABIC LETTER DAD WITH DOT BELOW
    0x06FC: 'D',  # ARABIC LETTER GHAIN WITH DOT BELOW
    0x06FD: 'U',  # ARABIC SIGN SINDHI AMPERSAND
    0x06FE: 'U',  # ARABIC SIGN SINDHI POSTPOSITION MEN
    0x06FF: 'D',  # ARABIC LETTER HEH WITH INVERTED V
}
