"""Built-in demo lexicon: 200 common Urdu words, used when no lexicon file is given."""

DEMO_WORDS = (
    'پاکستان', 'اردو', 'زبان', 'کتاب', 'قلم', 'دروازہ', 'کھڑکی', 'پانی',
    'کھانا', 'روٹی', 'دودھ', 'چائے', 'گھر', 'شہر', 'گاؤں', 'ملک',
    'دنیا', 'آسمان', 'زمین', 'سورج', 'چاند', 'ستارہ', 'بارش', 'ہوا',
    'درخت', 'پھول', 'پھل', 'سیب', 'آم', 'کیلا', 'انگور', 'سبزی',
    'گوشت', 'مچھلی', 'انڈا', 'چاول', 'نمک', 'چینی', 'میز', 'کرسی',
    'بستر', 'کمرہ', 'باورچی', 'دفتر', 'اسکول', 'استاد', 'طالب', 'علم',
    'سبق', 'امتحان', 'نتیجہ', 'سوال', 'جواب', 'دوست', 'دشمن', 'بھائی',
    'بہن', 'ماں', 'باپ', 'والد', 'والدہ', 'بیٹا', 'بیٹی', 'بچہ',
    'بچی', 'لڑکا', 'لڑکی', 'آدمی', 'عورت', 'انسان', 'جانور', 'گھوڑا',
    'گائے', 'بکری', 'بلی', 'کتا', 'پرندہ', 'طوطا', 'کبوتر', 'شیر',
    'ہاتھی', 'بندر', 'سڑک', 'گاڑی', 'ریل', 'جہاز', 'کشتی', 'بازار',
    'دکان', 'قیمت', 'پیسہ', 'روپیہ', 'سونا', 'چاندی', 'لوہا', 'آگ',
    'دھواں', 'روشنی', 'اندھیرا', 'صبح', 'شام', 'رات', 'دن', 'ہفتہ',
    'مہینہ', 'سال', 'وقت', 'گھڑی', 'آج', 'کل', 'پرسوں', 'ابھی',
    'ہمیشہ', 'کبھی', 'اچھا', 'برا', 'بڑا', 'چھوٹا', 'لمبا', 'نیا',
    'پرانا', 'خوبصورت', 'گرم', 'ٹھنڈا', 'میٹھا', 'کڑوا', 'سفید', 'کالا',
    'لال', 'پیلا', 'سبز', 'نیلا', 'خوش', 'اداس', 'محبت', 'نفرت',
    'امید', 'خواب', 'دل', 'دماغ', 'آنکھ', 'کان', 'ناک', 'منہ',
    'ہاتھ', 'پاؤں', 'سر', 'بال', 'دانت', 'خون', 'صحت', 'بیماری',
    'ڈاکٹر', 'دوا', 'ہسپتال', 'حکومت', 'عدالت', 'قانون', 'انصاف', 'آزادی',
    'تاریخ', 'ثقافت', 'مذہب', 'مسجد', 'نماز', 'روزہ', 'عید', 'تہوار',
    'شادی', 'مہمان', 'تحفہ', 'خط', 'اخبار', 'خبر', 'تصویر', 'فلم',
    'گانا', 'موسیقی', 'کھیل', 'کرکٹ', 'ٹیم', 'جیت', 'ہار', 'کام',
    'محنت', 'مزدور', 'کسان', 'کھیت', 'فصل', 'گندم', 'ضرور', 'ظاہر',
    'غلط', 'فوج', 'قوم', 'ثبوت', '۱۹۴۷', '۲۰۲۴', 'لاہور', 'کراچی',
)
