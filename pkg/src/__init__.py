"""归约算子演算：格运算、合流判定、补全与截断表示。"""
