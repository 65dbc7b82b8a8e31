#!/usr/bin/env python3
# Copyright 2026 The ScoreRAG Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic demo corpus and the scripted LLM replies under data/demo.

All articles are invented. Judge replies are keyed on the article title so
the demo pipeline is deterministic without a model.
"""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data" / "demo"

# (news_id, date, title, content, judge replies)
ARTICLES = [
    (2384857, "2024-02-01", "美官員：與中方芬太尼會談有意義但尚須更多措施",
     "<p>（德國之聲中文網）美國白宮官員表示，美中官員在北京就阻止芬太尼化學品流入美國舉行磋商。</p>"
     "<p>官員指出，雙方同意設立工作小組，定期交換執法資訊，但美方希望中方採取更多具體措施。</p>",
     ["92", "88", "90"]),
    (2384901, "2024-01-27", "美中官員曼谷會晤 討論台海與中東局勢",
     "<p>美國國家安全顧問與中國外交部長在曼谷會晤，雙方就台海、中東與紅海航運安全交換意見。</p>"
     "<p>白宮表示，會談坦率且具建設性，雙方同意維持高層溝通管道。</p>",
     ["95", "93", "94"]),
    (2379112, "2023-11-16", "美中元首舊金山會晤 同意恢復軍事溝通",
     "<p>美中兩國元首在舊金山郊區會晤四小時，同意恢復中斷一年多的兩軍高層溝通，並在芬太尼管制上合作。</p>"
     "<p>雙方也同意就人工智慧風險展開政府間對話。</p>",
     ["85", "80", "83"]),
    (2371430, "2023-06-19", "美國務卿訪北京 與中方官員會晤穩定關係",
     "<p>美國國務卿抵達北京，與中國外交官員會晤，這是五年來美國國務卿首度訪華。</p>"
     "<p>雙方同意穩定兩國關係，並增加人員往來與直航班次。</p>",
     ["72", "68", "70"]),
    (2366001, "2023-02-05", "美國擊落中國氣球 國務卿取消訪華行程",
     "<p>美軍在大西洋上空擊落一顆中國高空氣球，美國國務卿隨即宣布延後原定的北京行程。</p>"
     "<p>中方表示強烈不滿，稱該氣球為民用飛艇。</p>",
     ["45", "40", "42"]),
    (2352210, "2022-08-04", "中國宣布對台周邊軍演 美中溝通管道受阻",
     "<p>中國人民解放軍宣布在台灣周邊海域舉行實彈演習，並暫停與美方的多項對話機制。</p>",
     ["55", "50", "48"]),
    (2340987, "2021-03-19", "美中阿拉斯加高層會談 雙方公開交鋒",
     "<p>美中高層官員在阿拉斯加安克拉治舉行會談，開場時雙方在媒體面前激烈交鋒。</p>"
     "<p>會後雙方均表示會談直接且坦率，同意在氣候議題上保持溝通。</p>",
     ["78", "75", "80"]),
    (2321456, "2019-12-13", "美中達成第一階段貿易協議",
     "<p>美國與中國宣布達成第一階段貿易協議，美方暫緩部分關稅，中方承諾擴大採購美國農產品。</p>",
     ["35", "30", "32"]),
    (2309876, "2018-12-02", "美中元首阿根廷晚宴 同意暫停加徵關稅",
     "<p>美中兩國元首在布宜諾斯艾利斯共進晚餐，同意在九十天內暫停加徵新關稅並展開談判。</p>",
     ["60", "58", "62"]),
    (2301122, "2018-07-06", "美國對中國商品加徵關稅正式生效",
     "<p>美國對價值三百四十億美元的中國商品加徵百分之二十五關稅正式生效，中方隨即宣布反制。</p>",
     ["25", "20", "22"]),
    (2310001, "2019-08-09", "颱風利奇馬逼近 北台灣豪雨特報",
     "<p>中央氣象局表示，颱風利奇馬暴風圈逼近北部海面，北台灣各縣市發布豪雨特報。</p>",
     None),
    (2330045, "2020-10-22", "台積電第三季營收創新高",
     "<p>台積電公布第三季財報，營收與獲利同創新高，先進製程需求強勁。</p>",
     None),
    (2335510, "2020-07-24", "中華職棒開放觀眾進場 球迷湧入球場",
     "<p>中華職棒宣布開放更多觀眾進場，各球場湧入大批球迷，防疫措施同步升級。</p>",
     None),
    (2344321, "2021-05-19", "台灣疫情升溫 全國進入三級警戒",
     "<p>中央流行疫情指揮中心宣布全國疫情警戒提升至第三級，室內五人以上聚會一律禁止。</p>",
     None),
    (2350870, "2022-03-03", "全台大停電 經濟部說明興達電廠事故",
     "<p>興達電廠發生事故導致全台多處停電，經濟部長出面說明原因並致歉。</p>",
     None),
    (2358899, "2022-11-26", "九合一地方選舉投票結果出爐",
     "<p>九合一地方選舉投開票結束，各縣市長當選人陸續發表感言。</p>",
     None),
    (2362233, "2023-01-10", "國際油價走跌 國內汽油降價",
     "<p>受國際油價下跌影響，國內汽油與柴油價格下週起調降零點二元。</p>",
     None),
    (2373344, "2023-08-30", "海葵颱風襲台 多地停班停課",
     "<p>海葵颱風路徑偏南，東部與南部多個縣市宣布停班停課。</p>",
     None),
    (2380002, "2023-12-20", "央行理監事會決議利率維持不變",
     "<p>中央銀行理監事會決議政策利率維持不變，總裁表示將持續觀察通膨走勢。</p>",
     None),
    (2386650, "2024-03-15", "中日韓外長會議籌備 東北亞外交動態頻繁",
     "<p>中日韓三國外交官員會晤籌備外長會議，東北亞外交動態頻繁。</p>",
     ["38", "35", "36"]),
]

SUMMARIZE_REPLY = "$1：本則新聞報導相關官員的會晤經過與雙方立場，並交代時間、地點與後續安排。"

GENERATE_REPLY = (
    "美中官員近期持續會晤，試圖為緊張的雙邊關係設下護欄。今年二月初，兩國官員在北京就阻止芬太尼化學品"
    "流入美國舉行磋商，白宮官員認為會談有意義，但要求中方採取更多措施(Reference 1)。\n\n"
    "這類對話得來不易。二〇二一年三月的阿拉斯加會談，雙方在鏡頭前公開交鋒，僅在氣候議題上同意保持溝通"
    "(Reference 2)。直到二〇二三年六月美國國務卿訪問北京，兩國才同意穩定關係並增加人員往來(Reference 3)。"
    "分析人士指出，定期的官員會晤有助於降低誤判風險，但具體成果仍有待觀察。"
)

EVALUATE_REPLY = '{"coherence": 5, "accuracy": 4, "professionalism": 5, "informativeness": 4}'


def main():
    raw = ROOT / "raw"
    raw.mkdir(parents=True, exist_ok=True)
    with open(raw / "articles.jsonl", "w", encoding="utf-8") as f:
        for news_id, date, title, content, _ in ARTICLES:
            f.write(json.dumps({"news_id": news_id, "published_date": date, "title": title,
                                "content": content}, ensure_ascii=False) + "\n")

    rules = []
    for _, _, title, _, replies in ARTICLES:
        if replies:
            rules.append({"tag": "judge", "contains": title, "responses": replies})
    rules += [
        {"tag": "judge", "responses": ["10"]},
        {"tag": "summarize", "regex": "標題：([^\\n]+)", "responses": [SUMMARIZE_REPLY]},
        {"tag": "generate", "responses": [GENERATE_REPLY]},
        {"tag": "evaluate", "responses": [EVALUATE_REPLY]},
        {"responses": ["0"]},
    ]
    with open(ROOT / "stub_script.json", "w", encoding="utf-8") as f:
        json.dump({"rules": rules}, f, ensure_ascii=False, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
