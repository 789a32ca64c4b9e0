#pragma once

#include <string_view>

namespace revlens::data {

// Irregular forms, "form base" pairs separated by whitespace. Entries that
// map a word to itself block the suffix rules for words that only look
// inflected (during, thing, need, ...).
inline constexpr std::string_view kLemmaExceptions = R"EXC(
am be  are be  is be  was be  were be  been be  being be  'm be  're be  's be
has have  had have  having have  'd have  've have
does do  did do  done do  doing do
goes go  went go  gone go  going go
says say  said say
made make  took take  taken take  gave give  given give  got get  gotten get
found find  thought think  saw see  seen see  knew know  known know  told tell
left leave  kept keep  brought bring  began begin  begun begin  broke break  broken break
built build  bought buy  caught catch  chose choose  chosen choose  drew draw  drawn draw
drove drive  driven drive  ate eat  eaten eat  fell fall  fallen fall  fed feed  felt feel
fought fight  flew fly  flown fly  forgot forget  forgotten forget  forgave forgive
forgiven forgive  froze freeze  frozen freeze  grew grow  grown grow  hung hang  heard hear
hid hide  hidden hide  held hold  laid lay  led lead  lent lend  lost lose  meant mean
met meet  paid pay  ran run  rang ring  rung ring  rose rise  risen rise  sat sit
sent send  shook shake  shaken shake  shot shoot  showed show  shown show  sang sing
sung sing  sank sink  sunk sink  slept sleep  slid slide  spoke speak  spoken speak
spent spend  spun spin  stood stand  stole steal  stolen steal  stuck stick  struck strike
swam swim  swum swim  swung swing  taught teach  tore tear  torn tear  threw throw
thrown throw  understood understand  woke wake  woken wake  wore wear  worn wear  won win
wrote write  written write  became become  overrode override  overridden override
rewrote rewrite  rewritten rewrite  undid undo  undone undo  withdrew withdraw
withdrawn withdraw  dealt deal  dug dig  bit bite  bitten bite  blew blow  blown blow
bent bend  bound bind  bred breed  fled flee  flung fling  forbade forbid  forbidden forbid
foresaw foresee  foreseen foresee  ground grind  hurt hurt  knelt kneel  leapt leap
mistook mistake  mistaken mistake  misunderstood misunderstand  overtook overtake
overtaken overtake  overwrote overwrite  overwritten overwrite  rode ride  ridden ride
sought seek  sold sell  shone shine  shrank shrink  shrunk shrink  slung sling  sped speed
spat spit  split split  spread spread  sprang spring  sprung spring  stank stink
strove strive  swept sweep  swore swear  sworn swear  wept weep  wound wind  wrung wring
children child  people person  men man  women woman  feet foot  teeth tooth  mice mouse
geese goose  criteria criterion  phenomena phenomenon  analyses analysis  indices index
matrices matrix  vertices vertex  appendices appendix  lives life  knives knife
wives wife  leaves leaf  halves half  selves self  shelves shelf  wolves wolf
better good  best good  worse bad  worst bad  further far  farther far
during during  nothing nothing  something something  anything anything  everything everything
thing thing  string string  morning morning  evening evening  ceiling ceiling  spring spring
bring bring  king king  ring ring  sing sing  swing swing  sling sling  sting sting
wing wing  ping ping  thing thing  nothing nothing  pudding pudding  wedding wedding
need need  feed feed  seed seed  speed speed  deed deed  weed weed  bleed bleed  breed breed
proceed proceed  exceed exceed  succeed succeed  indeed indeed  embed embed  bed bed
red red  shed shed  hundred hundred  kindred kindred  naked naked  wicked wicked
sacred sacred  rugged rugged  ragged ragged  beloved beloved  hatred hatred
this this  is be  its its  us us  yes yes  his his  hers hers  ours ours  yours yours
theirs theirs  always always  perhaps perhaps  towards towards  besides besides
sometimes sometimes  afterwards afterwards  whereas whereas  unless unless  across across
news news  series series  species species  physics physics  mathematics mathematics
analysis analysis  basis basis  status status  bus bus  thanks thanks  cheers cheers
lens lens  alias alias  canvas canvas  atlas atlas  bias bias  chaos chaos  ethos ethos
process process  access access  success success  address address  class class
less less  unless unless  glass glass  pass pass  boss boss  loss loss  miss miss
data data  media media  ids id  apis api  urls url  todos todo  photos photo
)EXC";

}  // namespace revlens::data
