"""
Agrupamiento DBSCAN de detecciones primitivas
"""

from typing import List, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .cfar import PrimitiveDetection
from .config import DetectorConfig

NOISE = -1
UNVISITED = -2


def dbscan_labels(points: np.ndarray, min_points: int) -> np.ndarray:
    """
    DBSCAN con vecindad de Chebyshev de radio 1 sobre puntos ya escalados

    Args:
        points: Matriz N x 2 de coordenadas normalizadas
        min_points: Mínimo de vecinos (incluido el propio punto) de un núcleo

    Returns:
        Etiqueta de cluster por punto, NOISE para el ruido
    """
    n = len(points)
    labels = np.full(n, UNVISITED, dtype=int)
    if n == 0:
        return labels

    tree = cKDTree(points)
    neighbours = tree.query_ball_point(points, r=1.0, p=np.inf)
    is_core = np.array([len(nb) >= min_points for nb in neighbours])

    cluster_id = 0
    for i in range(n):
        if labels[i] != UNVISITED:
            continue
        if not is_core[i]:
            labels[i] = NOISE
            continue
        labels[i] = cluster_id
        frontier = list(neighbours[i])
        while frontier:
            j = frontier.pop()
            if labels[j] == NOISE:
                labels[j] = cluster_id
            if labels[j] != UNVISITED:
                continue
            labels[j] = cluster_id
            if is_core[j]:
                frontier.extend(neighbours[j])
        cluster_id += 1
    return labels


def cluster(
    detections: Sequence[PrimitiveDetection], cfg: DetectorConfig
) -> List[List[PrimitiveDetection]]:
    """
    Agrupa detecciones con la métrica max(|Δr|/R_th, |Δf|/D_th) ≤ 1

    Args:
        detections: Detecciones primitivas del CFAR
        cfg: Configuración del detector

    Returns:
        Clusters en orden de su primera detección; el ruido se descarta
    """
    ordered = sorted(detections, key=lambda d: (d.range_bin, d.doppler_bin))
    if not ordered:
        return []
    points = np.array([[d.range / cfg.r_th, d.doppler / cfg.d_th] for d in ordered])
    labels = dbscan_labels(points, cfg.min_cluster_size)

    n_clusters = int(labels.max()) + 1 if labels.size else 0
    clusters: List[List[PrimitiveDetection]] = [[] for _ in range(n_clusters)]
    for det, label in zip(ordered, labels):
        if label >= 0:
            clusters[label].append(det)
    return clusters
