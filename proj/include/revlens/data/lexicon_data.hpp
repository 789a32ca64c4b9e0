#pragma once

#include <string_view>

namespace revlens::data {

// Bundled tagging lexicon. Each line is "TAG: item item ..."; a bare item
// takes the line's tag, "word/T1/T2" lists explicit tags with the most
// frequent first. A word listed on several lines accumulates tags in order.
inline constexpr std::string_view kLexicon = R"LEX(
DT: the a an this that/DT/IN/WDT these those each every some any no/DT/UH/RB all/DT/PDT both either neither another half/NN/DT
PRP: i you he she it we they me him us them myself yourself himself herself itself ourselves themselves yourselves one/CD/PRP
PRP$: my your his its our their her/PRP$/PRP mine/PRP yours/PRP ours/PRP theirs/PRP
WP: who what whom whoever whatever
WP$: whose
WDT: which whichever
WRB: where when why how whenever wherever however/RB/WRB
IN: about above across after against along among amongst around as at because before behind below beneath beside besides between beyond by despite during except for from if in inside into like/IN/VB/VBP near of off on onto outside over per since than through throughout till toward towards under underneath unless until unlike upon via whether while with within without though although whereas whilst atop amid
CC: and but or nor plus yet/RB/CC so/RB/IN/CC
TO: to
EX: there/EX/RB
MD: can could may might must shall should will would ought cannot need/VB/VBP/NN/MD
UH: oh ouch wow hey hi hello yes/UH/RB yeah yep nope oops hmm hm ah aha uh um lol bye hooray alas cheers/NNS/UH welcome/JJ/UH/VB help/VB/NN/UH
CD: zero two three four five six seven eight nine ten eleven twelve twenty thirty forty fifty hundred thousand million billion dozen
RP: up/RP/IN/RB out/RP/IN/RB down/RP/IN/RB
RB: not n't never always often sometimes usually rarely seldom very quite rather too also just only even still already again now then here once twice soon later early ago yet ever almost nearly enough really actually probably maybe perhaps possibly definitely certainly surely clearly obviously apparently basically essentially generally typically currently recently finally eventually instead otherwise else anyway anyhow anymore therefore thus hence meanwhile moreover furthermore nevertheless nonetheless indeed altogether away back forward together apart aside upstream downstream inline elsewhere everywhere somewhere anywhere nowhere online offline quietly slowly quickly easily simply directly exactly correctly properly successfully automatically manually explicitly implicitly completely entirely fully partially mostly mainly only slightly somewhat highly likely/JJ/RB unlikely/JJ/RB well/RB/UH/JJ fast/RB/JJ hard/JJ/RB long/JJ/RB right/JJ/NN/RB first/JJ/RB last/JJ/RB next/JJ/RB better/JJR/RBR/RB best/JJS/RBS most/JJS/RBS/RB more/JJR/RBR less/JJR/RBR least/JJS/RBS much/JJ/RB little/JJ/RB far/RB/JJ further/RB/JJ else besides/IN/RB above/IN/RB below/IN/RB before/IN/RB after/IN/RB around/IN/RB over/IN/RB in/IN/RB on/IN/RB off/IN/RB through/IN/RB
RBR: earlier/RBR/JJR
JJ: good bad new old big small happy green young great nice clean clear correct wrong same different other similar simple complex easy difficult short high low large huge tiny few many own whole main separate single multiple several various entire exact explicit implicit generic abstract dynamic static internal external relevant irrelevant real actual original legacy outdated obsolete redundant unused unnecessary necessary possible impossible useful useless empty full valid invalid proper improper appropriate inappropriate consistent inconsistent readable unreadable unclear confusing important minor major specific general common public private protected final global local default/NN/JJ optional required/VBN/JJ mandatory available unavailable responsible sure/JJ/RB fine ok/JJ/UH okay/JJ/UH able unable ready free safe unsafe secure insecure stable unstable robust fragile dead alive extra total additional previous current recent latest upcoming future present/JJ/NN/VB past/JJ/NN/IN proper primary secondary temporary permanent manual automatic visible invisible hidden/VBN/JJ blank null/JJ/NN true false boolean numeric integer/NN/JJ nullable mutable immutable async synchronous asynchronous concurrent parallel serial sequential recursive iterative functional logical physical virtual native foreign unique duplicate/JJ/VB/NN identical equal/JJ/VB unequal wide narrow tall heavy light/NN/JJ dark bright red blue yellow black white grey gray pink purple orange/NN/JJ brown strong weak slow quick expensive cheap efficient inefficient effective ineffective elegant ugly weird strange odd funny interesting boring descriptive meaningful meaningless verbose concise compact lengthy brief precise accurate inaccurate ambiguous obvious straightforward tricky awkward risky dangerous careful careless helpful harmful critical fatal severe serious trivial cosmetic nit/NN/JJ picky correct incorrect complete incomplete partial strict loose lazy eager aware unaware familiar unfamiliar known/VBN/JJ unknown certain uncertain likely probable unlikely worth wrong excessive sufficient insufficient enough/JJ/RB adequate inadequate reasonable unreasonable logical illogical sensible fair due nested deep shallow flat raw rich poor broken/VBN/JJ missing/VBG/JJ deprecated/VBN/JJ hardcoded/JJ/VBN magic/JJ/NN awesome amazing excellent perfect neat cool lovely wonderful terrible horrible awful sorry/JJ/UH glad thankful grateful agreed/VBN/JJ wise clever smart stupid silly crazy sane insane normal abnormal usual unusual typical atypical standard/NN/JJ custom/JJ/NN special regular irregular official unofficial experimental stale fresh handy dirty messy tidy neat pretty/RB/JJ
JJR: larger smaller bigger higher lower longer shorter faster slower easier harder simpler cleaner clearer newer older greater fewer worse/JJR/RBR
JJS: largest smallest biggest highest lowest longest shortest fastest slowest easiest hardest simplest cleanest newest oldest greatest fewest worst/JJS/RBS
NN: code class method function variable file line name value type test/NN/VB case comment/NN/VB issue/NN/VB bug error exception message log/NN/VB logic loop condition check/VB/NN parameter argument field property constant string number object array list/NN/VB map/NN/VB key index size length space tab indentation format/NN/VB style convention rule project module package library dependency version release/NN/VB branch master commit/NN/VB patch/NN/VB change/NN/VB pull/VB/NN request/NN/VB review/NN/VB reviewer build/VB/NN pipeline job server client api endpoint database query table column row schema user admin data information documentation doc readme description title label tag feature option config configuration setting environment path directory folder url link/NN/VB image icon button page view/NN/VB component template layout screen css html color colour font width height margin padding border text input output result response status state event handler callback thread lock/NN/VB memory performance cache/NN/VB time date timeout delay interval step process/NN/VB task algorithm approach solution idea question answer reason point thing way place part side end/NN/VB start/VB/NN beginning problem fix/VB/NN workaround hack improvement refactoring cleanup duplication copy/NN/VB typo spelling grammar word sentence letter character symbol semicolon colon comma bracket brace parenthesis quote whitespace newline import/NN/VB export/NN/VB return/VB/NN statement expression operator assignment declaration definition implementation interface abstraction inheritance instance constructor destructor member attribute annotation decorator validation security permission access/NN/VB token password secret credential account session cookie header footer sidebar menu modal dialog form checkbox dropdown tooltip animation transition scroll/NN/VB mobile desktop browser device platform framework tool script command shell terminal console container docker cluster node service microservice worker queue notification email mail team developer author owner maintainer contributor bot ci coverage lint linter warning deprecation necessity holes storm blade cluster distress drought table happiness hope daniel sentiment polarity work/NN/VB use/VB/NN need/VB/VBP/NN/MD call/VB/NN set/VB/NN/VBN report/NN/VB support/NN/VB help/VB/NN look/VB/NN sound/NN/VB/JJ stop/VB/NN run/VB/NN/VBN update/VB/NN upload/VB/NN merge/VB/NN match/NN/VB limit/NN/VB mark/VB/NN drop/VB/NN push/VB/NN save/VB/NN sort/VB/NN split/VB/NN/VBN/VBD turn/VB/NN try/VB/NN wrap/VB/NN document/NN/VB debug/VB/NN/JJ install/VB/NN reset/VB/NN/VBN/VBD test/NN/VB design/NN/VB guess/VB/NN plan/NN/VB move/VB/NN love/VB/NN like/IN/VB/VBP/JJ answer/NN/VB question/NN/VB note/NN/VB doubt/NN/VB care/NN/VB mind/NN/VB thanks/NNS/UH thank/VB/VBP lgtm/NN nits/NNS rebase/VB/NN squash/VB/NN revert/VB/NN refactor/VB/NN deploy/VB/NN deployment release/NN/VB hotfix backport/NN/VB cherry-pick/VB/NN ticket jira github gitlab repo repository fork/NN/VB origin upstream remote local/JJ/NN staging production prod dev development developer sprint milestone backlog story epic estimate/NN/VB priority severity impact effort deadline meeting discussion conversation thread suggestion recommendation proposal concern feedback opinion preference consensus decision agreement point detail example sample demo prototype draft wip spec specification requirement scenario use-case flow workflow process procedure guideline policy standard practice pattern anti-pattern smell complexity readability maintainability scalability reliability stability usability accessibility compatibility portability testability consistency clarity simplicity correctness quality efficiency speed latency throughput bandwidth load stress benchmark profile/NN/VB profiler metric measurement statistic counter gauge histogram alert monitor/NN/VB monitoring dashboard chart graph plot diagram picture screenshot video gif logo asset resource bundle artifact binary executable jar dll library lib framework sdk toolkit plugin extension addon module submodule namespace scope context closure lambda function procedure routine subroutine coroutine generator iterator enumerator enum struct union pointer reference handle/NN/VB address offset buffer stream socket port host domain network protocol http https request response payload body header cookie certificate encryption decryption hash/NN/VB checksum signature algorithm cipher salt nonce uuid guid id identifier timestamp datetime timezone locale language translation localization internationalization unicode encoding charset regex pattern wildcard glob filter/NN/VB sorting ordering grouping paging pagination offset limit cursor batch chunk slice segment partition shard replica backup/NN/VB restore/VB/NN snapshot migration rollback/NN/VB transaction commit rollback lock mutex semaphore race deadlock leak overflow underflow crash/NN/VB failure success outcome output effect side-effect behaviour behavior regression performance bottleneck overhead cost price budget limit quota threshold capacity memory disk cpu gpu core processor machine computer laptop phone tablet app application program software hardware firmware system os kernel driver

VB: please/VB/UH be have/VB/VBP do/VB/VBP add allow apply ask avoid bring call catch clear close come compile consider contain convert create define delete describe disable enable ensure enter expect explain extract fail feel fetch find follow force get give go handle happen hide ignore implement improve include increase initialize introduce keep know leave let load maintain make manage modify name/NN/VB open/VB/JJ override parse pass prefer prevent print provide put raise read reduce reformat register remember remove rename render replace require resolve reuse rewrite say see seem select send show simplify skip suggest take tell think throw understand use validate verify want wonder write agree disagree accept reject approve deny confirm check cover declare decide decrease depend deprecate detect determine drop emit encourage escape evaluate execute exist expose extend filter finish fit generate guarantee hold indent inform inherit inject insert inspect integrate invoke iterate join keep kill lack learn listen live log lose mention migrate mock mean miss mutate notice notify observe obtain occur omit optimize organize output own pick point poll prepare preserve produce propagate protect publish query rebuild receive recommend recover refer reflect refresh regenerate reload remain reorder repeat rephrase represent reproduce resize respect restart restore restrict retry reveal revisit rotate round rollback scan search separate serialize serve share shorten sign simplify sleep solve specify spend squash stage stay store stub subscribe succeed swap switch sync tag tend track transform translate trigger trim unify unwrap upgrade wait warn watch wish worry yield believe hope/NN/VB guess prefer assume clarify elaborate double-check recheck re-check rerun re-run retest revise correct/JJ/VB adjust align annotate append assert assign attach bump cache capture cast centralize chain clean/JJ/VB clone collapse combine commit compare complain complete/JJ/VB compose compute concatenate configure connect consolidate construct consume continue contribute control copy count decouple delegate deploy destroy detach differ discard discuss dispatch display dispose divide document download duplicate edit eliminate embed encapsulate encode enforce enhance enqueue enrich expand experiment explore factor flatten flush fold format forward freeze group guard hash highlight host identify implement import increment index inline install instantiate intercept invalidate isolate limit link lint list localize lookup loop lower map mark match measure merge minimize mount move normalize nest offload overwrite pack pad paginate parameterize patch persist pin play populate post prefix prepend prettify process promote prompt provision prune pull push quote re-use read recommend redirect reference release rename reorganize replace report request reschedule reset resolve restructure return reuse review round run sanitize save schedule scroll set settle setup shift shrink simulate slice sort split start stop stream strip submit substitute suffix support suppress test throttle toggle touch transfer traverse try tweak type unlock unpack unset update upload vary version wrap zip
VBD: was/VBD were/VBD had did made went came took gave got found thought said saw knew told left kept brought began broke built bought caught chose drew drove ate fell fed felt fought flew forgot forgave froze grew hung heard hid held hurt laid led lent lost meant met paid put quit ran rang rose sat sent set shook shot showed shut sang sank slept slid spoke spent spun stood stole stuck struck swam swung taught tore threw understood woke wore won wrote became overrode rewrote undid withdrew
VBN: been done made gone come taken given gotten found thought said seen known told left kept brought begun broken built bought caught chosen drawn driven eaten fallen fed felt fought flown forgotten forgiven frozen grown hung heard hidden held hurt laid led lent lost meant met paid put quit run rung risen sat sent set shaken shot shown shut sung sunk slept slid spoken spent spun stood stolen stuck struck swum swung taught torn thrown understood woken worn won written become overridden rewritten undone withdrawn
VBZ: is has does goes says
VBP: am are
VBG: being having doing going
NNS: children people men women feet teeth mice data/NNS/NN criteria phenomena analyses indices/NNS matrices vertices
)LEX";

}  // namespace revlens::data
